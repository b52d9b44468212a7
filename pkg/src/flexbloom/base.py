from __future__ import annotations

from typing import Iterable

import numpy as np

from . import hashing
from .bitvec import BitVector
from .hashing import BaseHash, Element, HashPair
from .probes import ProbeGroup, probe, probe_matrix


class ProbeFilter:
    """Insert/query machinery common to all filter kinds.

    Subclasses set ``groups``. Scalar methods (``add``, ``in``) and batch
    methods (``add_many``, ``contains_many``) share one probe plan and are
    bit-for-bit equivalent.
    """

    groups: tuple[ProbeGroup, ...]

    def __init__(self, m: int, seed: int = 0, hasher: BaseHash | None = None) -> None:
        if not 0 <= seed <= hashing.MASK64:
            raise ValueError(f"seed must fit in 64 bits, got {seed}")
        self.bits = BitVector(m)
        self.seed = seed
        self.hasher = hasher
        self.inserted_count = 0

    @property
    def m(self) -> int:
        return self.bits.length_bits

    def pair(self, element: Element) -> HashPair:
        return hashing.base_hashes(element, self.seed, self.hasher)

    def probes(self, element: Element) -> list[int]:
        return probe(self.pair(element), self.groups)

    def effective_hash_count(self, element: Element) -> int:
        return len(self.probes(element))

    def add(self, element: Element) -> None:
        for i in self.probes(element):
            self.bits.set_bit(i)
        self.inserted_count += 1

    def query(self, element: Element) -> bool:
        # an element with no active probes set no bits at insert time either
        return all(self.bits.get_bit(i) for i in self.probes(element))

    __contains__ = query

    def add_pairs(self, h1: np.ndarray, h2: np.ndarray) -> None:
        idx, active = probe_matrix(h1, h2, self.groups)
        self.bits.set_many(idx[active])
        self.inserted_count += len(h1)

    def query_pairs(self, h1: np.ndarray, h2: np.ndarray) -> np.ndarray:
        idx, active = probe_matrix(h1, h2, self.groups)
        if idx.shape[1] == 0:
            return np.ones(len(h1), dtype=bool)
        hit = self.bits.get_many(idx.ravel()).reshape(idx.shape)
        return np.all(hit | ~active, axis=1)

    def add_many(self, elements: Iterable[Element]) -> None:
        self.add_pairs(*hashing.hash_many(elements, self.seed, self.hasher))

    def contains_many(self, elements: Iterable[Element]) -> np.ndarray:
        return self.query_pairs(*hashing.hash_many(elements, self.seed, self.hasher))

    def fraction_of_zeros(self) -> float:
        return self.bits.fraction_of_zeros()

    @property
    def k_effective(self) -> float:
        return sum(g.k for g in self.groups)
