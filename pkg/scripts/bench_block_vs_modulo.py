"""Time a generic-modulo standard filter against a block filter of equal length.

Report only: medians over repetitions after one warm-up, with a rank
stability flag. Numbers depend heavily on the interpreter and numpy build.

    python3 scripts/bench_block_vs_modulo.py --m 3145728 --n 100000
"""
import argparse
import sys

from flexbloom import harness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=3 * 2**20)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--path", choices=("batch", "scalar"), default="batch")
    args = ap.parse_args()

    rows = harness.bench(args.m, args.n, args.reps, args.seed, args.path)
    harness.write_csv(rows, harness.BENCH_HEADER, sys.stdout)
    if not (rows[0].insert_rank_stable and rows[0].query_rank_stable):
        print("note: ranking changed between repetitions; treat the medians as noise", file=sys.stderr)


if __name__ == "__main__":
    main()
