"""Baseline Bloom filter with an integer number of hash functions."""
from __future__ import annotations

from . import hashing
from .base import ProbeFilter
from .hashing import BaseHash
from .probes import ProbeGroup

MASK = "mask"
GENERIC = "generic"


class StandardBloomFilter(ProbeFilter):
    """Bloom filter with ``k`` double-hashed probes over ``m`` bits.

    ``mode="mask"`` reduces indices with ``& (m - 1)`` and needs a
    power-of-two ``m``; ``mode="generic"`` uses ``% m`` and accepts any
    length. The default picks mask mode whenever it is legal. On a
    power-of-two length both modes produce identical filters.
    """

    def __init__(
        self,
        m: int,
        k: int,
        seed: int = 0,
        mode: str | None = None,
        hasher: BaseHash | None = None,
    ) -> None:
        if m < 1:
            raise ValueError(f"filter length must be positive, got {m}")
        if int(k) != k or k < 1:
            raise ValueError(f"standard filter needs an integer k >= 1, got {k}")
        if mode is None:
            mode = MASK if hashing.is_power_of_two(m) else GENERIC
        if mode not in (MASK, GENERIC):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == MASK and not hashing.is_power_of_two(m):
            raise ValueError(f"mask mode needs a power-of-two length, got {m}")
        super().__init__(m, seed, hasher)
        self.k = int(k)
        self.mode = mode
        self.groups = (ProbeGroup(m, 0, self.k, generic=mode == GENERIC),)

    def __repr__(self) -> str:
        return (
            f"StandardBloomFilter(m={self.m}, k={self.k}, mode={self.mode!r}, "
            f"n={self.inserted_count})"
        )
