"""Probe plans: which bit indices an element touches in a filter.

A filter is described by a tuple of :class:`ProbeGroup`. A group owns a
contiguous range of the bit vector and applies ``always`` unconditional
hash ordinals plus, with probability ``frac``, one more ordinal. The
standard filter is one group with ``frac == 0``; the rational filter is one
group with a fractional part; the block filter has one group per block.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hashing
from .hashing import HashPair


@dataclass(frozen=True)
class ProbeGroup:
    size: int
    offset: int
    always: int
    frac: float = 0.0
    tag: int = 0
    key: int | None = None  # block re-keying salt, None keeps the base pair
    generic: bool = False  # reduce with ``% size`` instead of the mask

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("probe group must cover at least one bit")
        if not self.generic and not hashing.is_power_of_two(self.size):
            raise ValueError(f"mask reduction needs a power-of-two size, got {self.size}")
        if self.always < 0 or not 0.0 <= self.frac < 1.0:
            raise ValueError("invalid hash count for probe group")

    @property
    def k(self) -> float:
        return self.always + self.frac

    @property
    def max_probes(self) -> int:
        return self.always + (1 if self.frac > 0 else 0)


def split_k(k: float) -> tuple[int, float]:
    whole = int(np.floor(k))
    return whole, k - whole


def _index(pair: HashPair, i: int, g: ProbeGroup) -> int:
    if g.generic:
        return hashing.modulo_index(pair, i, g.size) + g.offset
    return hashing.derived_index(pair, i, g.size, g.offset)


def active_count(pair: HashPair, g: ProbeGroup) -> int:
    if g.frac > 0 and hashing.activation_decision(pair, g.frac, g.tag):
        return g.always + 1
    return g.always


def probe(pair: HashPair, groups: tuple[ProbeGroup, ...]) -> list[int]:
    """Active probe indices of one element, in group then ordinal order."""
    out = []
    for g in groups:
        local = pair if g.key is None else hashing.block_pair(pair, g.key)
        for i in range(active_count(pair, g)):
            out.append(_index(local, i, g))
    return out


def probe_matrix(
    h1: np.ndarray, h2: np.ndarray, groups: tuple[ProbeGroup, ...]
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`probe` for a batch.

    Returns ``(indices, active)``, both shaped ``(len(h1), total max
    probes)``. Inactive slots hold a valid index of their group that must be
    ignored.
    """
    n = len(h1)
    width = sum(g.max_probes for g in groups)
    idx = np.zeros((n, width), dtype=np.int64)
    active = np.ones((n, width), dtype=bool)
    col = 0
    for g in groups:
        if g.key is None:
            a, b = h1, h2
        else:
            a, b = hashing.block_pairs(h1, h2, g.key)
        for i in range(g.max_probes):
            if g.generic:
                idx[:, col] = hashing.modulo_indices(a, b, i, g.size) + g.offset
            else:
                idx[:, col] = hashing.derived_indices(a, b, i, g.size, g.offset)
            if i == g.always:
                active[:, col] = hashing.activation_decisions(h1, h2, g.frac, g.tag)
            col += 1
    return idx, active
