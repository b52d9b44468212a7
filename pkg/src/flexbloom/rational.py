"""Bloom filter with a real-valued number of hash functions.

``floor(k)`` ordinals are applied to every element. Ordinal ``floor(k)``
is applied only when the element's own activation decision passes with
probability ``k - floor(k)``. The decision is a pure function of the
element's hash pair, so insert and query always agree and the filter has
no false negatives.
"""
from __future__ import annotations

import math

from . import hashing
from .base import ProbeFilter
from .hashing import BaseHash
from .probes import ProbeGroup, split_k

STANDALONE_TAG = 0


class RationalBloomFilter(ProbeFilter):
    def __init__(
        self, m: int, k: float, seed: int = 0, hasher: BaseHash | None = None
    ) -> None:
        if not hashing.is_power_of_two(m):
            raise ValueError(f"rational filter length must be a power of two, got {m}")
        if not (k > 0 and math.isfinite(k)):
            raise ValueError(f"k must be a positive real, got {k}")
        super().__init__(m, seed, hasher)
        self.k = float(k)
        always, frac = split_k(self.k)
        self.groups = (ProbeGroup(m, 0, always, frac, tag=STANDALONE_TAG),)

    @property
    def p_activation(self) -> float:
        return self.groups[0].frac

    def __repr__(self) -> str:
        return f"RationalBloomFilter(m={self.m}, k={self.k}, n={self.inserted_count})"
