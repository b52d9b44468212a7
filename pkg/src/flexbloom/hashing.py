"""Seedable hashing primitives shared by every filter kind.

One MurmurHash3 x64/128 call per element yields two 64-bit halves. All
probe indices are derived from that pair by double hashing, so each
function here is pure and has a scalar form plus a numpy form that
operates on ``uint64`` arrays with wrap-around arithmetic.
"""
from __future__ import annotations

from typing import Callable, Iterable, NamedTuple, Union

import mmh3
import numpy as np

MASK64 = (1 << 64) - 1
TWO_64 = 1 << 64

GOLDEN = 0x9E3779B97F4A7C15
_K1 = 0xD6E8FEB86659FD93
_K2 = 0xA0761D6478BD642F

Element = Union[bytes, bytearray, memoryview, str]


class HashPair(NamedTuple):
    h1: int
    h2: int


BaseHash = Callable[[bytes, int], HashPair]


def as_bytes(element: Element) -> bytes:
    """Text is hashed as its UTF-8 encoding."""
    if isinstance(element, str):
        return element.encode("utf-8")
    return bytes(element)


def fmix64(k: int) -> int:
    """Murmur3 64-bit finalizer (a bijection on 64-bit words)."""
    k ^= k >> 33
    k = (k * 0xFF51AFD7ED558CCD) & MASK64
    k ^= k >> 33
    k = (k * 0xC4CEB9FE1A85EC53) & MASK64
    k ^= k >> 33
    return k


def fmix64_array(k: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=np.uint64)
    with np.errstate(over="ignore"):
        k = k ^ (k >> np.uint64(33))
        k = k * np.uint64(0xFF51AFD7ED558CCD)
        k = k ^ (k >> np.uint64(33))
        k = k * np.uint64(0xC4CEB9FE1A85EC53)
        k = k ^ (k >> np.uint64(33))
    return k


def murmur3_pair(data: bytes, seed: int) -> HashPair:
    # mmh3 only takes 32-bit seeds; the high word re-finalizes both halves.
    lo, hi = seed & 0xFFFFFFFF, (seed >> 32) & 0xFFFFFFFF
    h1, h2 = mmh3.hash64(data, lo, signed=False)
    if hi:
        h1 = fmix64(h1 ^ ((hi * GOLDEN) & MASK64))
        h2 = fmix64(h2 ^ ((hi * _K1) & MASK64))
    return HashPair(h1, h2)


def base_hashes(element: Element, seed: int = 0, hasher: BaseHash | None = None) -> HashPair:
    """Return the two 64-bit base hashes of ``element`` under ``seed``."""
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    return (hasher or murmur3_pair)(as_bytes(element), seed)


def hash_many(
    elements: Iterable[Element], seed: int = 0, hasher: BaseHash | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Hash a batch of elements into parallel ``uint64`` arrays ``(h1, h2)``."""
    pairs = [base_hashes(e, seed, hasher) for e in elements]
    if not pairs:
        empty = np.zeros(0, dtype=np.uint64)
        return empty, empty.copy()
    arr = np.array(pairs, dtype=np.uint64)
    return np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1])


def is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


def pow2_mod(h: int, m: int) -> int:
    """``h mod m`` for a power-of-two ``m``, computed as ``h & (m - 1)``."""
    if not is_power_of_two(m):
        raise ValueError(f"modulus must be a positive power of two, got {m}")
    return h & (m - 1)


def derived_index(pair: HashPair, i: int, block_size: int, block_offset: int = 0) -> int:
    """Global bit index of hash ordinal ``i`` inside a power-of-two block."""
    h = (pair.h1 + (i + block_size) * pair.h2) & MASK64
    return (h & (block_size - 1)) + block_offset


def modulo_index(pair: HashPair, i: int, m: int) -> int:
    """Ordinal ``i`` reduced by a generic modulo; valid for any ``m >= 1``."""
    return ((pair.h1 + (i + m) * pair.h2) & MASK64) % m


def derived_indices(
    h1: np.ndarray, h2: np.ndarray, i: int, block_size: int, block_offset: int = 0
) -> np.ndarray:
    with np.errstate(over="ignore"):
        h = h1 + np.uint64((i + block_size) & MASK64) * h2
    idx = h & np.uint64(block_size - 1)
    return idx.astype(np.int64) + block_offset


def modulo_indices(h1: np.ndarray, h2: np.ndarray, i: int, m: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        h = h1 + np.uint64((i + m) & MASK64) * h2
    return (h % np.uint64(m)).astype(np.int64)


def block_pair(pair: HashPair, key: int) -> HashPair:
    """Re-key a hash pair so that blocks of one filter probe independently.

    Both halves go through a bijective finalizer salted by ``key``; the
    result for distinct keys is unrelated in its low bits, which are the
    only bits a power-of-two mask keeps.
    """
    return HashPair(
        fmix64(pair.h1 ^ (((key + 1) * _K1) & MASK64)),
        fmix64(pair.h2 ^ (((key + 1) * _K2) & MASK64)),
    )


def block_pairs(h1: np.ndarray, h2: np.ndarray, key: int) -> tuple[np.ndarray, np.ndarray]:
    return (
        fmix64_array(h1 ^ np.uint64(((key + 1) * _K1) & MASK64)),
        fmix64_array(h2 ^ np.uint64(((key + 1) * _K2) & MASK64)),
    )


def decision_value(pair: HashPair, context_tag: int) -> int:
    """Full-width 64-bit value that drives a probabilistic activation."""
    inner = fmix64((pair.h2 + (context_tag + 1) * GOLDEN) & MASK64)
    return fmix64(pair.h1 ^ inner)


def decision_values(h1: np.ndarray, h2: np.ndarray, context_tag: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        salted = h2 + np.uint64(((context_tag + 1) * GOLDEN) & MASK64)
    return fmix64_array(h1 ^ fmix64_array(salted))


def activation_threshold(p_activation: float) -> int:
    """``floor(p * 2**64)``; decision values strictly below it activate.

    ``p == 1`` yields ``2**64`` which every 64-bit value is below.
    """
    if not 0.0 <= p_activation <= 1.0:
        raise ValueError(f"activation probability must lie in [0, 1], got {p_activation}")
    # scaling by a power of two is exact in binary floating point
    return int(p_activation * TWO_64)


def activation_decision(pair: HashPair, p_activation: float, context_tag: int = 0) -> bool:
    threshold = activation_threshold(p_activation)
    return decision_value(pair, context_tag) < threshold


def activation_decisions(
    h1: np.ndarray, h2: np.ndarray, p_activation: float, context_tag: int = 0
) -> np.ndarray:
    threshold = activation_threshold(p_activation)
    if threshold == 0:
        return np.zeros(len(h1), dtype=bool)
    if threshold >= TWO_64:
        return np.ones(len(h1), dtype=bool)
    return decision_values(h1, h2, context_tag) < np.uint64(threshold)
