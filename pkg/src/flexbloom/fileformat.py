"""Binary filter file format (little-endian).

::

    magic "FXBF" | version u8 | kind u8 | flags u8 | reserved u8
    m u64 | k f64 | n u64 | seed u64
    [kind 3 only: count u16, then count x (size u64, k f64)]
    payload ceil(m/8) bytes, LSB-first
    crc32 u32 over everything before it

Kinds: 0 standard, 1 rational, 2 block filter, 3 block subfilter. Flags
bit 0 marks mask mode for kind 0. Kind 2 stores no block table; the
layout is rebuilt from ``(m, n)``. ``n`` is the insert count for kinds
0 and 1 and the planned element count for kinds 2 and 3.
"""
from __future__ import annotations

import os
import struct
import zlib
from typing import Union

from .bitvec import BitVector
from .rational import RationalBloomFilter
from .standard import GENERIC, MASK, StandardBloomFilter
from .vsbbf import BlockLayout, VsbBloomFilter

MAGIC = b"FXBF"
VERSION = 1

KIND_STANDARD = 0
KIND_RATIONAL = 1
KIND_BLOCK = 2
KIND_SUBFILTER = 3

FLAG_MASK_MODE = 0x01

_HEADER = struct.Struct("<4sBBBBQdQQ")
_COUNT = struct.Struct("<H")
_BLOCK_ROW = struct.Struct("<Qd")
_CRC = struct.Struct("<I")

Filter = Union[StandardBloomFilter, RationalBloomFilter, VsbBloomFilter]


class FormatError(ValueError):
    pass


class ChecksumError(FormatError):
    pass


class VersionError(FormatError):
    pass


def kind_of(filt: Filter) -> int:
    if isinstance(filt, StandardBloomFilter):
        return KIND_STANDARD
    if isinstance(filt, RationalBloomFilter):
        return KIND_RATIONAL
    if isinstance(filt, VsbBloomFilter):
        return KIND_SUBFILTER if filt.is_subfilter else KIND_BLOCK
    raise TypeError(f"cannot serialize {type(filt).__name__}")


def dumps(filt: Filter) -> bytes:
    kind = kind_of(filt)
    flags = 0
    if kind == KIND_STANDARD:
        k, n = float(filt.k), filt.inserted_count
        if filt.mode == MASK:
            flags |= FLAG_MASK_MODE
    elif kind == KIND_RATIONAL:
        k, n = filt.k, filt.inserted_count
    else:
        k, n = filt.layout.k_total, filt.planned_n
    parts = [_HEADER.pack(MAGIC, VERSION, kind, flags, 0, filt.m, k, n, filt.seed)]
    if kind == KIND_SUBFILTER:
        parts.append(_COUNT.pack(len(filt.layout.blocks)))
        parts.extend(_BLOCK_ROW.pack(b.size, b.k) for b in filt.layout.blocks)
    parts.append(filt.bits.to_bytes())
    body = b"".join(parts)
    return body + _CRC.pack(zlib.crc32(body))


def loads(data: bytes) -> Filter:
    if len(data) < _HEADER.size + _CRC.size:
        raise FormatError("file too short for a filter header")
    magic, version, kind, flags, reserved, m, k, n, seed = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise VersionError(f"unsupported format version {version}")
    body, (crc,) = data[: -_CRC.size], _CRC.unpack_from(data, len(data) - _CRC.size)
    if zlib.crc32(body) != crc:
        raise ChecksumError("CRC32 mismatch")
    if reserved != 0:
        raise FormatError("reserved header byte is not zero")
    pos = _HEADER.size
    table = None
    if kind == KIND_SUBFILTER:
        (count,) = _COUNT.unpack_from(body, pos)
        pos += _COUNT.size
        table = []
        for _ in range(count):
            table.append(_BLOCK_ROW.unpack_from(body, pos))
            pos += _BLOCK_ROW.size
    payload = body[pos:]
    if len(payload) != (m + 7) // 8:
        raise FormatError(f"payload has {len(payload)} bytes, expected {(m + 7) // 8}")
    bits = BitVector.from_bytes(m, payload)

    if kind == KIND_STANDARD:
        mode = MASK if flags & FLAG_MASK_MODE else GENERIC
        filt: Filter = StandardBloomFilter(m, int(k), seed, mode=mode)
        filt.inserted_count = n
    elif kind == KIND_RATIONAL:
        filt = RationalBloomFilter(m, k, seed)
        filt.inserted_count = n
    elif kind == KIND_BLOCK:
        filt = VsbBloomFilter(m, n, seed)
    elif kind == KIND_SUBFILTER:
        filt = VsbBloomFilter(m, n, seed, layout=BlockLayout.from_table(table))
    else:
        raise FormatError(f"unknown filter kind {kind}")
    filt.bits = bits
    return filt


def dump(filt: Filter, path: Union[str, os.PathLike]) -> int:
    data = dumps(filt)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def load(path: Union[str, os.PathLike]) -> Filter:
    with open(path, "rb") as fh:
        return loads(fh.read())
