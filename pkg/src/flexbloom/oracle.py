"""Seeded Monte-Carlo estimators and exact ground truth for the filters."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Collection, Iterable

import numpy as np

from . import hashing
from .base import ProbeFilter
from .probes import probe_matrix

ELEMENT_BYTES = 16


@dataclass(frozen=True)
class TrialReport:
    trials: int
    hits: int

    def __post_init__(self) -> None:
        if self.trials < 1 or not 0 <= self.hits <= self.trials:
            raise ValueError(f"invalid trial counts {self.hits}/{self.trials}")

    @property
    def estimate(self) -> float:
        return self.hits / self.trials

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    def within(self, expected: float, n_se: float = 3.0, rel: float = 0.0) -> bool:
        """True when ``expected`` lies within ``rel * expected + n_se`` standard errors."""
        return abs(self.estimate - expected) <= rel * abs(expected) + n_se * self.std_error

    def merge(self, other: "TrialReport") -> "TrialReport":
        return TrialReport(self.trials + other.trials, self.hits + other.hits)


def merge_reports(reports: Iterable[TrialReport]) -> TrialReport:
    reports = list(reports)
    return TrialReport(sum(r.trials for r in reports), sum(r.hits for r in reports))


def sub_seed(seed: int, index: int) -> int:
    """Deterministic per-partition seed, independent of scheduling order."""
    return hashing.fmix64((seed ^ hashing.fmix64(index + 1)) & hashing.MASK64)


def random_elements(
    count: int,
    seed: int,
    exclude: Collection[bytes] = (),
    length: int = ELEMENT_BYTES,
) -> list[bytes]:
    """``count`` distinct random byte strings, none of them in ``exclude``."""
    if not isinstance(exclude, (set, frozenset, dict)):
        exclude = set(exclude)
    rng = np.random.default_rng(seed)
    out: list[bytes] = []
    seen = set()
    while len(out) < count:
        need = count - len(out)
        raw = rng.integers(0, 256, size=(need, length), dtype=np.uint8).tobytes()
        for j in range(need):
            e = raw[j * length : (j + 1) * length]
            if e in seen or e in exclude:
                continue
            seen.add(e)
            out.append(e)
    return out


def exact_membership_oracle(inserted: Collection, probe) -> bool:
    return probe in inserted


def estimate_fpr(
    filt: ProbeFilter, inserted: Collection[bytes], negatives: int = 10_000, seed: int = 0
) -> TrialReport:
    """Query ``negatives`` fresh elements that were never inserted."""
    inserted = inserted if isinstance(inserted, (set, frozenset)) else set(inserted)
    probes = random_elements(negatives, seed, exclude=inserted)
    assert inserted.isdisjoint(probes)
    hits = int(filt.contains_many(probes).sum())
    return TrialReport(negatives, hits)


def active_probe_matrix(filt: ProbeFilter, elements: list[bytes]) -> tuple[np.ndarray, np.ndarray]:
    h1, h2 = hashing.hash_many(elements, filt.seed, filt.hasher)
    return probe_matrix(h1, h2, filt.groups)


def has_clash(idx: np.ndarray, active: np.ndarray) -> np.ndarray:
    """Rows whose active probes contain a repeated index."""
    if idx.shape[1] < 2:
        return np.zeros(idx.shape[0], dtype=bool)
    # inactive slots get distinct negative sentinels so they never match
    sentinels = -1 - np.arange(idx.shape[1], dtype=np.int64)
    keyed = np.where(active, idx, sentinels)
    keyed.sort(axis=1)
    return np.any(keyed[:, 1:] == keyed[:, :-1], axis=1)


def estimate_clash_rate(filt: ProbeFilter, trials: int, seed: int = 0) -> TrialReport:
    """Fraction of random elements whose active probes hit some bit twice.

    Only the filter's probe plan and seed are used; its contents are not.
    """
    elements = random_elements(trials, seed)
    idx, active = active_probe_matrix(filt, elements)
    return TrialReport(trials, int(has_clash(idx, active).sum()))


def estimate_activation_rate(
    p_activation: float, trials: int, seed: int = 0, context_tag: int = 0
) -> TrialReport:
    h1, h2 = hashing.hash_many(random_elements(trials, seed), seed)
    fired = hashing.activation_decisions(h1, h2, p_activation, context_tag)
    return TrialReport(trials, int(fired.sum()))
