"""Packed bit array with a cached population count."""
from __future__ import annotations

import numpy as np


class BitVector:
    """Fixed-length bit array, LSB-first within each byte.

    Bits can only be set, never cleared, so ``ones_count`` is maintained
    incrementally. Padding bits past ``length_bits`` stay zero.
    """

    __slots__ = ("length_bits", "_buf", "_view", "ones_count")

    def __init__(self, length_bits: int) -> None:
        if length_bits < 0:
            raise ValueError(f"length must be non-negative, got {length_bits}")
        self.length_bits = length_bits
        self._buf = bytearray((length_bits + 7) // 8)
        self._view = np.frombuffer(self._buf, dtype=np.uint8)
        self.ones_count = 0

    def __len__(self) -> int:
        return self.length_bits

    def __repr__(self) -> str:
        return f"BitVector(length_bits={self.length_bits}, ones={self.ones_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length_bits == other.length_bits and self._buf == other._buf

    def _check(self, i: int) -> None:
        if not 0 <= i < self.length_bits:
            raise IndexError(f"bit index {i} out of range [0, {self.length_bits})")

    def set_bit(self, i: int) -> None:
        self._check(i)
        byte, mask = i >> 3, 1 << (i & 7)
        if not self._buf[byte] & mask:
            self._buf[byte] |= mask
            self.ones_count += 1

    def get_bit(self, i: int) -> bool:
        self._check(i)
        return bool(self._buf[i >> 3] & (1 << (i & 7)))

    def set_many(self, indices: np.ndarray) -> None:
        idx = np.unique(np.asarray(indices, dtype=np.int64))
        if idx.size == 0:
            return
        if idx[0] < 0 or idx[-1] >= self.length_bits:
            raise IndexError("bit index out of range")
        fresh = idx[~self._test(idx)]
        if fresh.size:
            np.bitwise_or.at(self._view, fresh >> 3, (1 << (fresh & 7)).astype(np.uint8))
            self.ones_count += int(fresh.size)

    def get_many(self, indices: np.ndarray) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= self.length_bits):
            raise IndexError("bit index out of range")
        return self._test(idx)

    def _test(self, idx: np.ndarray) -> np.ndarray:
        return (self._view[idx >> 3] >> (idx & 7).astype(np.uint8)) & 1 == 1

    def fraction_of_zeros(self) -> float:
        if self.length_bits == 0:
            raise ValueError("fraction of zeros is undefined for an empty vector")
        return (self.length_bits - self.ones_count) / self.length_bits

    def to_bools(self) -> np.ndarray:
        return np.unpackbits(self._view, bitorder="little")[: self.length_bits].astype(bool)

    @classmethod
    def from_bools(cls, bits) -> "BitVector":
        bits = np.asarray(bits, dtype=bool)
        out = cls(int(bits.size))
        packed = np.packbits(bits, bitorder="little")
        out._view[:] = packed
        out.ones_count = int(bits.sum())
        return out

    def extract_range(self, start: int, length: int) -> "BitVector":
        """Copy ``length`` bits starting at ``start`` into a new vector."""
        if start < 0 or length < 0 or start + length > self.length_bits:
            raise ValueError(
                f"range [{start}, {start + length}) exceeds length {self.length_bits}"
            )
        return BitVector.from_bools(self.to_bools()[start : start + length])

    def recount(self) -> int:
        return int(np.unpackbits(self._view).sum())

    def to_bytes(self) -> bytes:
        return bytes(self._buf)

    @classmethod
    def from_bytes(cls, length_bits: int, payload: bytes) -> "BitVector":
        out = cls(length_bits)
        if len(payload) != len(out._buf):
            raise ValueError(
                f"payload of {len(payload)} bytes does not match {length_bits} bits"
            )
        out._buf[:] = payload
        tail = length_bits & 7
        if tail and out._buf[-1] >> tail:
            raise ValueError("padding bits beyond the vector length are set")
        out.ones_count = out.recount()
        return out

    def copy(self) -> "BitVector":
        out = BitVector(self.length_bits)
        out._buf[:] = self._buf
        out.ones_count = self.ones_count
        return out
