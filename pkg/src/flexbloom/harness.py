"""Experiment configs, parameter sweeps and the block-vs-modulo benchmark."""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, Sequence, Union

from . import analysis, hashing, oracle
from .base import ProbeFilter
from .rational import RationalBloomFilter
from .standard import GENERIC, StandardBloomFilter
from .vsbbf import BlockLayout, VsbBloomFilter, build_layout, compression_ratio

KINDS = ("standard", "rational", "vsbbf")
OPTIMAL = "optimal"
FOZ_TARGET = 0.5
FOZ_BAND = 0.02
SCHEMA_VERSION = 1

KValue = Union[float, str]


def parse_k(text: str) -> KValue:
    if text.strip().lower() == OPTIMAL:
        return OPTIMAL
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"k must be a positive real or 'optimal', got {text!r}")
    return value


def parse_k_values(text: str) -> list[KValue]:
    """Comma list of k values; ``start:stop:step`` expands inclusively."""
    out: list[KValue] = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            start, stop, step = (float(x) for x in part.split(":"))
            if step <= 0:
                raise ValueError("range step must be positive")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            out.extend(round(start + i * step, 10) for i in range(count))
        else:
            out.append(parse_k(part))
    return out


def parse_int_values(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def make_filter(
    kind: str, m: int, n: int, k: KValue = OPTIMAL, seed: int = 0, min_block: int = 1
) -> ProbeFilter:
    """Build an empty filter for ``n`` planned elements."""
    if kind == "standard":
        if k == OPTIMAL:
            k = max(1, round(analysis.optimal_k(m, n)))
        return StandardBloomFilter(m, k, seed)
    if kind == "rational":
        if k == OPTIMAL:
            k = analysis.optimal_k(m, n)
        return RationalBloomFilter(m, float(k), seed)
    if kind == "vsbbf":
        if k != OPTIMAL:
            raise ValueError("block filters always use the optimal per-block k")
        return VsbBloomFilter(m, n, seed, min_block=min_block)
    raise ValueError(f"unknown filter kind {kind!r}")


def expected_foz_of(filt: ProbeFilter, n: int) -> float:
    total = sum(g.size * analysis.expected_foz_rational(g.size, n, g.k) for g in filt.groups)
    return total / filt.m


@dataclass(frozen=True)
class ExperimentSpec:
    filter_kind: str
    m: int
    n: int
    k: KValue = OPTIMAL
    negatives: int = 10_000
    seed: int = 0
    repetitions: int = 1

    def __post_init__(self) -> None:
        if self.filter_kind not in KINDS:
            raise ValueError(f"filter_kind must be one of {KINDS}")
        if self.m < 1 or self.n < 1 or self.negatives < 1 or self.repetitions < 1:
            raise ValueError("m, n, negatives and repetitions must be positive")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls(**json.loads(text))


@dataclass(frozen=True)
class SweepSpec:
    """Grid over ``ns`` x ``ks`` for one filter kind and length."""

    filter_kind: str
    m: int
    ns: tuple[int, ...]
    ks: tuple[KValue, ...] = (OPTIMAL,)
    negatives: int = 10_000
    seed: int = 0
    repetitions: int = 1

    def points(self) -> list[ExperimentSpec]:
        return [
            ExperimentSpec(self.filter_kind, self.m, n, k, self.negatives, self.seed, self.repetitions)
            for n in self.ns
            for k in self.ks
        ]

    def to_json(self) -> str:
        d = asdict(self)
        d["ns"], d["ks"] = list(self.ns), list(self.ks)
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SweepSpec":
        d = json.loads(text)
        d["ns"], d["ks"] = tuple(d["ns"]), tuple(d["ks"])
        return cls(**d)


@dataclass(frozen=True)
class ResultRow:
    filter_kind: str
    m: int
    n: int
    k_effective: float
    seed: int
    fpr_estimate: float
    fpr_std_error: float
    foz_measured: float
    foz_expected: float
    insert_ns_per_element: float
    query_ns_per_element: float
    schema: int = SCHEMA_VERSION

    @property
    def foz_in_band(self) -> bool:
        return abs(self.foz_measured - FOZ_TARGET) <= FOZ_BAND

    def as_csv_fields(self) -> list[str]:
        return [
            str(self.schema),
            self.filter_kind,
            str(self.m),
            str(self.n),
            f"{self.k_effective:.10g}",
            str(self.seed),
            f"{self.fpr_estimate:.10g}",
            f"{self.fpr_std_error:.10g}",
            f"{self.foz_measured:.10g}",
            f"{self.foz_expected:.10g}",
            "1" if self.foz_in_band else "0",
            f"{self.insert_ns_per_element:.1f}",
            f"{self.query_ns_per_element:.1f}",
        ]


CSV_HEADER = (
    "schema",
    "filter_kind",
    "m",
    "n",
    "k_effective",
    "seed",
    "fpr_estimate",
    "fpr_std_error",
    "foz_measured",
    "foz_expected",
    "foz_band",
    "insert_ns_per_element",
    "query_ns_per_element",
)
TIMING_COLUMNS = ("insert_ns_per_element", "query_ns_per_element")


def element_seed(seed: int) -> int:
    return oracle.sub_seed(seed, 1)


def negative_seed(seed: int) -> int:
    return oracle.sub_seed(seed, 2)


def run_point(spec: ExperimentSpec) -> ResultRow:
    """One filter build and negative-query pass.

    Elements and negatives derive from ``spec.seed`` only, so every
    repetition of a spec yields the same numbers apart from timings.
    """
    filt = make_filter(spec.filter_kind, spec.m, spec.n, spec.k, spec.seed)
    inserted = oracle.random_elements(spec.n, element_seed(spec.seed))
    negatives = oracle.random_elements(
        spec.negatives, negative_seed(spec.seed), exclude=set(inserted)
    )
    t0 = time.perf_counter_ns()
    filt.add_many(inserted)
    t1 = time.perf_counter_ns()
    hits = int(filt.contains_many(negatives).sum())
    t2 = time.perf_counter_ns()
    report = oracle.TrialReport(spec.negatives, hits)
    return ResultRow(
        filter_kind=spec.filter_kind,
        m=spec.m,
        n=spec.n,
        k_effective=filt.k_effective,
        seed=spec.seed,
        fpr_estimate=report.estimate,
        fpr_std_error=report.std_error,
        foz_measured=filt.fraction_of_zeros(),
        foz_expected=expected_foz_of(filt, spec.n),
        insert_ns_per_element=(t1 - t0) / spec.n,
        query_ns_per_element=(t2 - t1) / spec.negatives,
    )


def sweep(grid: SweepSpec, jobs: int = 1) -> list[ResultRow]:
    """Rows in grid order (n outer, k inner, repetitions innermost)."""
    tasks = [p for p in grid.points() for _ in range(p.repetitions)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_point, tasks))
    return [run_point(p) for p in tasks]


def write_csv(rows: Iterable, header: Sequence[str], out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row.as_csv_fields())


def rows_to_csv(rows: Iterable[ResultRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, CSV_HEADER, buf)
    return buf.getvalue()


# -- block layout table ----------------------------------------------------


@dataclass(frozen=True)
class LayoutRow:
    block: int
    size: int
    offset: int
    k: float | None
    prefix_ratio: float

    def as_csv_fields(self) -> list[str]:
        k = "" if self.k is None else f"{self.k:.6g}"
        return [str(self.block), str(self.size), str(self.offset), k, f"{self.prefix_ratio:.6g}"]


LAYOUT_HEADER = ("block", "size", "offset", "k", "prefix_ratio")


def layout_table(total_bits: int, n: int | None = None, min_block: int = 1) -> list[LayoutRow]:
    """Blocks of ``total_bits`` with the compression ratio of each block prefix."""
    layout: BlockLayout = build_layout(total_bits, n or 1, min_block)
    rows = []
    for j, b in enumerate(layout.blocks):
        ratio = compression_ratio(layout, range(j + 1))
        rows.append(LayoutRow(j, b.size, b.offset, b.k if n else None, ratio))
    return rows


# -- benchmark -------------------------------------------------------------


@dataclass(frozen=True)
class BenchRow:
    filter_kind: str
    m: int
    n: int
    k_effective: float
    blocks: int
    reps: int
    insert_median_ns: float
    query_median_ns: float
    insert_rank_stable: bool
    query_rank_stable: bool

    def as_csv_fields(self) -> list[str]:
        return [
            self.filter_kind,
            str(self.m),
            str(self.n),
            f"{self.k_effective:.6g}",
            str(self.blocks),
            str(self.reps),
            f"{self.insert_median_ns:.2f}",
            f"{self.query_median_ns:.2f}",
            "1" if self.insert_rank_stable else "0",
            "1" if self.query_rank_stable else "0",
        ]


BENCH_HEADER = tuple(f.name for f in fields(BenchRow))


@dataclass
class _Timings:
    insert: list[float] = field(default_factory=list)
    query: list[float] = field(default_factory=list)


def _time_scalar(filt: ProbeFilter, elements: list[bytes]) -> tuple[float, float]:
    t0 = time.perf_counter_ns()
    for e in elements:
        filt.add(e)
    t1 = time.perf_counter_ns()
    for e in elements:
        filt.query(e)
    t2 = time.perf_counter_ns()
    return (t1 - t0) / len(elements), (t2 - t1) / len(elements)


def _time_batch(filt: ProbeFilter, h1, h2) -> tuple[float, float]:
    t0 = time.perf_counter_ns()
    filt.add_pairs(h1, h2)
    t1 = time.perf_counter_ns()
    filt.query_pairs(h1, h2)
    t2 = time.perf_counter_ns()
    return (t1 - t0) / len(h1), (t2 - t1) / len(h1)


def bench(m: int, n: int, reps: int = 5, seed: int = 0, path: str = "batch") -> list[BenchRow]:
    """Time a generic-modulo standard filter against a block filter of equal length.

    The element stream is hashed once up front unless ``path == "scalar"``,
    so the batch path times only index derivation and bit access. One
    warm-up round is discarded. Rank stability records whether the faster
    filter was the same in every repetition.
    """
    if hashing.is_power_of_two(m):
        raise ValueError(f"benchmark needs a non-power-of-two length, got {m}")
    if path not in ("batch", "scalar"):
        raise ValueError(f"unknown timing path {path!r}")
    elements = oracle.random_elements(n, element_seed(seed))
    k_std = max(1, round(analysis.optimal_k(m, n)))

    def fresh() -> tuple[ProbeFilter, ProbeFilter]:
        return StandardBloomFilter(m, k_std, seed, mode=GENERIC), VsbBloomFilter(m, n, seed)

    pairs = hashing.hash_many(elements, seed)
    timings = (_Timings(), _Timings())
    for rep in range(reps + 1):
        for filt, t in zip(fresh(), timings):
            ins, qry = _time_scalar(filt, elements) if path == "scalar" else _time_batch(filt, *pairs)
            if rep:
                t.insert.append(ins)
                t.query.append(qry)

    def stable(op: str) -> bool:
        a, b = (getattr(t, op) for t in timings)
        return len({x < y for x, y in zip(a, b)}) == 1

    std_f, blk_f = fresh()
    out = []
    for name, filt, t in (("standard-generic", std_f, timings[0]), ("vsbbf", blk_f, timings[1])):
        out.append(
            BenchRow(
                filter_kind=name,
                m=m,
                n=n,
                k_effective=filt.k_effective,
                blocks=len(filt.groups),
                reps=reps,
                insert_median_ns=statistics.median(t.insert),
                query_median_ns=statistics.median(t.query),
                insert_rank_stable=stable("insert"),
                query_rank_stable=stable("query"),
            )
        )
    return out
