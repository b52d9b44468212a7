"""Bloom filters with real-valued hash counts and arbitrary lengths."""
from .analysis import FilterParams, optimal_k
from .bitvec import BitVector
from .fileformat import dump, dumps, load, loads
from .hashing import HashPair, base_hashes
from .rational import RationalBloomFilter
from .standard import StandardBloomFilter
from .vsbbf import BlockLayout, VsbBloomFilter, build_layout, decompose

__all__ = [
    "BitVector",
    "BlockLayout",
    "FilterParams",
    "HashPair",
    "RationalBloomFilter",
    "StandardBloomFilter",
    "VsbBloomFilter",
    "base_hashes",
    "build_layout",
    "decompose",
    "dump",
    "dumps",
    "load",
    "loads",
    "optimal_k",
]
