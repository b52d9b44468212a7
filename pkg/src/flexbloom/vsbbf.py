"""Variably-sized block Bloom filter.

A filter of arbitrary length is split into the power-of-two blocks given
by the set bits of its length, largest first. Each block is a rational
filter of its own with ``k_j = size_j / n * ln 2`` and mask-only index
reduction. Because the layout follows from ``(total_bits, n)`` alone,
nothing beyond those two numbers needs to be stored.

Every block re-keys the element's hash pair with its size exponent before
double hashing, and uses ``exponent + 1`` as its activation tag. Keying by
size rather than position keeps a block's probes identical after it is
copied into a subfilter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import hashing
from .base import ProbeFilter
from .bitvec import BitVector
from .hashing import BaseHash
from .probes import ProbeGroup, probe_matrix, split_k


def decompose(total_bits: int) -> list[int]:
    """Power-of-two summands of ``total_bits``, descending."""
    if total_bits < 1:
        raise ValueError(f"filter length must be positive, got {total_bits}")
    return [1 << c for c in range(total_bits.bit_length() - 1, -1, -1) if total_bits >> c & 1]


@dataclass(frozen=True)
class Block:
    size: int
    offset: int
    k: float

    @property
    def exponent(self) -> int:
        return self.size.bit_length() - 1

    def probe_group(self) -> ProbeGroup:
        always, frac = split_k(self.k)
        return ProbeGroup(
            self.size, self.offset, always, frac, tag=self.exponent + 1, key=self.exponent
        )


@dataclass(frozen=True)
class BlockLayout:
    blocks: tuple[Block, ...]
    total_bits: int

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("layout needs at least one block")
        offset = 0
        for prev, b in zip((None,) + self.blocks, self.blocks):
            if not hashing.is_power_of_two(b.size):
                raise ValueError(f"block size {b.size} is not a power of two")
            if prev is not None and b.size >= prev.size:
                raise ValueError("block sizes must be strictly decreasing")
            if b.offset != offset:
                raise ValueError("block offsets must be contiguous")
            if not (b.k >= 0 and math.isfinite(b.k)):
                raise ValueError(f"invalid block hash count {b.k}")
            offset += b.size
        if offset != self.total_bits:
            raise ValueError("block sizes do not sum to the total length")

    @property
    def sizes(self) -> list[int]:
        return [b.size for b in self.blocks]

    @property
    def offsets(self) -> list[int]:
        return [b.offset for b in self.blocks]

    @property
    def ks(self) -> list[float]:
        return [b.k for b in self.blocks]

    @property
    def k_total(self) -> float:
        return sum(self.ks)

    @classmethod
    def from_table(cls, table: Sequence[tuple[int, float]]) -> "BlockLayout":
        """Contiguous layout from ``(size, k)`` rows, as stored for subfilters."""
        blocks, offset = [], 0
        for size, k in table:
            blocks.append(Block(int(size), offset, float(k)))
            offset += int(size)
        return cls(tuple(blocks), offset)


def build_layout(total_bits: int, n: int, min_block: int = 1) -> BlockLayout:
    """Blocks of ``total_bits`` with the optimal hash count for ``n`` each.

    ``min_block`` rejects lengths that would need a block smaller than it.
    """
    if n < 1:
        raise ValueError(f"planned element count must be positive, got {n}")
    if not hashing.is_power_of_two(min_block):
        raise ValueError(f"minimum block size must be a power of two, got {min_block}")
    sizes = decompose(total_bits)
    if sizes[-1] < min_block:
        raise ValueError(
            f"length {total_bits} needs a block of {sizes[-1]} bits, below the minimum {min_block}"
        )
    return BlockLayout.from_table([(s, s / n * math.log(2)) for s in sizes])


class VsbBloomFilter(ProbeFilter):
    """Block Bloom filter of arbitrary length.

    Build one from ``(total_bits, planned_n)``; subfilters are built by
    :meth:`extract_subfilter` and carry an explicit layout instead.
    """

    def __init__(
        self,
        total_bits: int,
        planned_n: int,
        seed: int = 0,
        hasher: BaseHash | None = None,
        min_block: int = 1,
        layout: BlockLayout | None = None,
    ) -> None:
        if layout is None:
            layout = build_layout(total_bits, planned_n, min_block)
            self.is_subfilter = False
        else:
            if layout.total_bits != total_bits:
                raise ValueError("layout length does not match the filter length")
            self.is_subfilter = True
        if planned_n < 1:
            raise ValueError(f"planned element count must be positive, got {planned_n}")
        super().__init__(total_bits, seed, hasher)
        self.layout = layout
        self.planned_n = planned_n
        self.groups = tuple(b.probe_group() for b in layout.blocks)

    def __repr__(self) -> str:
        return (
            f"VsbBloomFilter(m={self.m}, blocks={self.layout.sizes}, "
            f"planned_n={self.planned_n}, n={self.inserted_count})"
        )

    @property
    def over_filled(self) -> bool:
        return self.inserted_count > self.planned_n

    def block_verdicts(self, h1: np.ndarray, h2: np.ndarray) -> np.ndarray:
        """Per-block membership verdicts, shaped ``(len(h1), n_blocks)``."""
        out = np.ones((len(h1), len(self.groups)), dtype=bool)
        for j, g in enumerate(self.groups):
            idx, active = probe_matrix(h1, h2, (g,))
            if idx.shape[1]:
                hit = self.bits.get_many(idx.ravel()).reshape(idx.shape)
                out[:, j] = np.all(hit | ~active, axis=1)
        return out

    def extract_subfilter(self, block_indices: Sequence[int]) -> "VsbBloomFilter":
        """Copy the chosen blocks into a smaller filter.

        The block hash counts are inherited, so every element inserted into
        this filter is still reported present by the subfilter.
        """
        chosen = sorted(set(block_indices))
        if not chosen:
            raise ValueError("subfilter needs at least one block")
        for j in chosen:
            if not 0 <= j < len(self.layout.blocks):
                raise IndexError(f"no block {j} in a {len(self.layout.blocks)}-block layout")
        blocks = [self.layout.blocks[j] for j in chosen]
        layout = BlockLayout.from_table([(b.size, b.k) for b in blocks])
        sub = VsbBloomFilter(
            layout.total_bits, self.planned_n, self.seed, self.hasher, layout=layout
        )
        parts = [self.bits.extract_range(b.offset, b.size).to_bools() for b in blocks]
        sub.bits = BitVector.from_bools(np.concatenate(parts))
        sub.inserted_count = self.inserted_count
        return sub


def compression_ratio(layout: BlockLayout, block_indices: Sequence[int], total_bits: int | None = None) -> float:
    """Share of the full length kept by a block subset."""
    total = layout.total_bits if total_bits is None else total_bits
    return sum(layout.blocks[j].size for j in set(block_indices)) / total
