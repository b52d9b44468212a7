"""Command-line front end: ``flexbloom {build,query,extract,sweep,bench,decompose}``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileformat, harness, oracle
from .vsbbf import VsbBloomFilter


def read_tokens(path: str) -> list[bytes]:
    """Newline-delimited tokens; the bytes of each line without its newline."""
    data = Path(path).read_bytes()
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    return [line[:-1] if line.endswith(b"\r") else line for line in lines]


def generated_tokens(count: int, seed: int) -> list[bytes]:
    return [e.hex().encode("ascii") for e in oracle.random_elements(count, seed, length=8)]


def _summary(filt, out) -> None:
    kind = fileformat.kind_of(filt)
    print(f"kind\t{kind}", file=out)
    print(f"m\t{filt.m}", file=out)
    if isinstance(filt, VsbBloomFilter):
        print(f"n\t{filt.planned_n}", file=out)
        print(f"blocks\t{','.join(str(s) for s in filt.layout.sizes)}", file=out)
        print(f"k_blocks\t{','.join(f'{k:.6g}' for k in filt.layout.ks)}", file=out)
    else:
        print(f"n\t{filt.inserted_count}", file=out)
    print(f"k\t{filt.k_effective:.6g}", file=out)
    print(f"foz\t{filt.fraction_of_zeros():.6g}", file=out)


def cmd_build(args, out) -> int:
    if args.input:
        tokens = read_tokens(args.input)
        n = args.n or len(tokens)
    else:
        if not args.n:
            raise SystemExit("build needs --input or --n for generated elements")
        n = args.n
        tokens = generated_tokens(n, args.seed)
    filt = harness.make_filter(args.kind, args.m, n, args.k, args.seed, args.min_block)
    filt.add_many(tokens)
    size = fileformat.dump(filt, args.output)
    _summary(filt, out)
    print(f"bytes\t{size}", file=out)
    return 0


def cmd_query(args, out) -> int:
    filt = fileformat.load(args.filter)
    tokens = read_tokens(args.probes)
    verdicts = filt.contains_many(tokens)
    for token, hit in zip(tokens, verdicts):
        out.write(f"{token.decode('utf-8', 'replace')}\t{'present' if hit else 'absent'}\n")
    return 0


def cmd_extract(args, out) -> int:
    filt = fileformat.load(args.filter)
    if not isinstance(filt, VsbBloomFilter):
        raise SystemExit("only block filters can be split into subfilters")
    blocks = harness.parse_int_values(args.blocks)
    sub = filt.extract_subfilter(blocks)
    size = fileformat.dump(sub, args.output)
    _summary(sub, out)
    print(f"ratio\t{sub.m / filt.m:.6g}", file=out)
    print(f"bytes\t{size}", file=out)
    return 0


def cmd_sweep(args, out) -> int:
    if args.config:
        grid = harness.SweepSpec.from_json(Path(args.config).read_text())
    else:
        if not (args.m and args.n):
            raise SystemExit("sweep needs --config or both --m and --n")
        grid = harness.SweepSpec(
            filter_kind=args.kind,
            m=args.m,
            ns=tuple(harness.parse_int_values(args.n)),
            ks=tuple(harness.parse_k_values(args.k)),
            negatives=args.negatives,
            seed=args.seed,
            repetitions=args.reps,
        )
    rows = harness.sweep(grid, jobs=args.jobs)
    text = harness.rows_to_csv(rows)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="")
        print(f"{len(rows)} rows written to {args.output}", file=out)
    else:
        out.write(text)
    return 0


def cmd_bench(args, out) -> int:
    rows = harness.bench(args.m, args.n, args.reps, args.seed, args.path)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            harness.write_csv(rows, harness.BENCH_HEADER, fh)
    harness.write_csv(rows, harness.BENCH_HEADER, out)
    return 0


def cmd_decompose(args, out) -> int:
    rows = harness.layout_table(args.m_bf, args.n, args.min_block)
    harness.write_csv(rows, harness.LAYOUT_HEADER, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flexbloom", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kind_default="standard"):
        sp.add_argument("--kind", choices=harness.KINDS, default=kind_default)
        sp.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("build", help="insert elements and write a filter file")
    common(b)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--n", type=int, help="planned elements; generated count without --input")
    b.add_argument("--k", type=harness.parse_k, default=harness.OPTIMAL)
    b.add_argument("--input", help="newline-delimited element file")
    b.add_argument("--output", required=True)
    b.add_argument("--min-block", type=int, default=1)
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="print a verdict for each probe token")
    q.add_argument("filter")
    q.add_argument("probes")
    q.set_defaults(func=cmd_query)

    x = sub.add_parser("extract", help="write a subfilter holding some blocks of a block filter")
    x.add_argument("filter")
    x.add_argument("--blocks", required=True, help="comma-separated block indices")
    x.add_argument("--output", required=True)
    x.set_defaults(func=cmd_extract)

    s = sub.add_parser("sweep", help="false-positive sweep over n and k, as CSV")
    common(s)
    s.add_argument("--m", type=int)
    s.add_argument("--n", help="comma list of element counts")
    s.add_argument("--k", default=harness.OPTIMAL, help="comma list, start:stop:step or optimal")
    s.add_argument("--negatives", type=int, default=10_000)
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--config", help="JSON sweep spec instead of flags")
    s.add_argument("--output")
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("bench", help="time a generic-modulo filter against a block filter")
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--n", type=int, default=100_000)
    t.add_argument("--reps", type=int, default=5)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--path", choices=("batch", "scalar"), default="batch")
    t.add_argument("--output")
    t.set_defaults(func=cmd_bench)

    d = sub.add_parser("decompose", help="print the block layout of a filter length")
    d.add_argument("m_bf", type=int)
    d.add_argument("--n", type=int)
    d.add_argument("--min-block", type=int, default=1)
    d.set_defaults(func=cmd_decompose)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ValueError, OSError) as exc:
        print(f"flexbloom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
