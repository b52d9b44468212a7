import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flexbloom import hashing, oracle
from flexbloom.hashing import HashPair
from flexbloom.vsbbf import decompose

from murmur_ref import murmur3_x64_128

u64 = st.integers(min_value=0, max_value=hashing.MASK64)


@given(st.binary(max_size=64), st.integers(min_value=0, max_value=2**32 - 1))
def test_base_hash_matches_reference_murmur(data, seed):
    assert hashing.base_hashes(data, seed) == murmur3_x64_128(data, seed)


def test_base_hashes_deterministic():
    assert hashing.base_hashes(b"x", 5) == hashing.base_hashes(b"x", 5)
    assert hashing.base_hashes("héllo", 2**40 + 3) == hashing.base_hashes("héllo".encode(), 2**40 + 3)


def test_empty_element_allowed():
    assert isinstance(hashing.base_hashes(b"", 0), HashPair)


def test_seed_range_checked():
    with pytest.raises(ValueError):
        hashing.base_hashes(b"x", -1)
    with pytest.raises(ValueError):
        hashing.base_hashes(b"x", 2**64)


def test_h1_bits_uniform():
    # 1e5 random elements: every bit of h1 set with frequency 0.5 +- 0.01
    h1, _ = hashing.hash_many(oracle.random_elements(100_000, seed=1), seed=3)
    bits = (h1[:, None] >> np.arange(64, dtype=np.uint64)) & np.uint64(1)
    freq = bits.mean(axis=0)
    assert np.all(np.abs(freq - 0.5) <= 0.01)


def test_h1_bucket_chi_squared():
    h1, _ = hashing.hash_many(oracle.random_elements(100_000, seed=2), seed=0)
    counts = np.bincount((h1 >> np.uint64(56)).astype(np.int64), minlength=256)
    expected = len(h1) / 256
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    # 255 dof: mean 255, sd ~22.6; 400 is > 6 sd out
    assert chi2 < 400


@pytest.mark.parametrize("s1,s2", [(1, 2), (0, 2**32), (2**32, 2**33), (7, 7 + 2**63)])
def test_seed_sensitivity(s1, s2):
    elements = oracle.random_elements(10_000, seed=9)
    same = sum(hashing.base_hashes(e, s1) == hashing.base_hashes(e, s2) for e in elements)
    assert same <= 10  # >= 99.9% differ


def test_hash_many_matches_scalar():
    elements = [b"", b"a", "text", bytes(range(33))]
    h1, h2 = hashing.hash_many(elements, 11)
    for e, a, b in zip(elements, h1, h2):
        assert hashing.base_hashes(e, 11) == (int(a), int(b))
    e1, e2 = hashing.hash_many([], 0)
    assert e1.dtype == np.uint64 and e1.size == 0 and e2.size == 0


def test_pluggable_hasher():
    def const(data, seed):
        return HashPair(3, 0)

    assert hashing.base_hashes(b"anything", 0, const) == (3, 0)


class TestPow2Mod:
    def test_examples(self):
        assert hashing.pow2_mod(13, 8) == 5
        assert hashing.pow2_mod(7, 8) == 7
        assert hashing.pow2_mod(12345, 1) == 0

    @pytest.mark.parametrize("m", [0, 3, 6, 24, -8])
    def test_rejects_non_power_of_two(self, m):
        with pytest.raises(ValueError):
            hashing.pow2_mod(5, m)

    def test_matches_generic_modulo(self):
        rng = np.random.default_rng(0)
        values = [int(v) for v in rng.integers(0, 2**63, size=10_000, dtype=np.uint64)]
        values = [v | (int(rng.integers(0, 2)) << 63) for v in values]
        for c in range(21):
            m = 1 << c
            assert all(hashing.pow2_mod(h, m) == h % m for h in values)

    @given(u64, st.integers(min_value=0, max_value=63))
    def test_property(self, h, c):
        assert hashing.pow2_mod(h, 1 << c) == h % (1 << c)


class TestDerivedIndex:
    def test_unit_block_collapses_to_offset(self):
        for pair in [HashPair(0, 0), HashPair(hashing.MASK64, 12345), HashPair(99, 7)]:
            assert hashing.derived_index(pair, 4, 1, 17) == 17

    def test_zero_h2_collapses_double_hashing(self):
        for i in range(10):
            assert hashing.derived_index(HashPair(3, 0), i, 8, 0) == 3

    def test_wraps_mod_2_64(self):
        pair = HashPair(hashing.MASK64, hashing.MASK64)
        # (2^64 - 1) + 9 * (2^64 - 1) = 10 * 2^64 - 10 -> low bits of -10
        assert hashing.derived_index(pair, 1, 8, 0) == (-10) % 8

    def test_stays_inside_blocks_of_25(self):
        rng = np.random.default_rng(4)
        h1 = rng.integers(0, 2**64, size=10_000, dtype=np.uint64)
        h2 = rng.integers(0, 2**64, size=10_000, dtype=np.uint64)
        offset = 0
        for size in decompose(25):
            for i in range(6):
                idx = hashing.derived_indices(h1, h2, i, size, offset)
                assert idx.min() >= offset and idx.max() < offset + size
                for a, b, got in list(zip(h1, h2, idx))[:200]:
                    assert hashing.derived_index(HashPair(int(a), int(b)), i, size, offset) == got
            offset += size

    @given(u64, u64, st.integers(0, 40), st.integers(0, 8), st.integers(0, 1000))
    def test_range_exhaustive_small_blocks(self, h1, h2, i, c, offset):
        size = 1 << c
        idx = hashing.derived_index(HashPair(h1, h2), i, size, offset)
        assert offset <= idx < offset + size
        assert idx - offset == ((h1 + (i + size) * h2) % 2**64) % size

    @given(u64, u64, st.integers(0, 40), st.integers(1, 5000))
    def test_modulo_index_scalar_matches_vector(self, h1, h2, i, m):
        scalar = hashing.modulo_index(HashPair(h1, h2), i, m)
        vec = hashing.modulo_indices(np.array([h1], np.uint64), np.array([h2], np.uint64), i, m)
        assert 0 <= scalar < m and scalar == int(vec[0])


class TestActivation:
    def test_zero_and_one(self):
        pairs = [hashing.base_hashes(e) for e in oracle.random_elements(2000, seed=5)]
        assert not any(hashing.activation_decision(p, 0.0) for p in pairs)
        assert all(hashing.activation_decision(p, 1.0) for p in pairs)

    @pytest.mark.parametrize("p", [-0.01, 1.0001, float("nan")])
    def test_rejects_out_of_range(self, p):
        with pytest.raises(ValueError):
            hashing.activation_decision(HashPair(1, 2), p)

    def test_calibrated_at_0_3(self):
        report = oracle.estimate_activation_rate(0.3, 100_000, seed=8)
        assert 0.29 <= report.estimate <= 0.31

    def test_threshold_resolution_beats_block_size(self):
        # a 1/m-quantized comparison would give 0 or 1/2 for m = 2
        report = oracle.estimate_activation_rate(0.1, 100_000, seed=3, context_tag=1)
        assert abs(report.estimate - 0.1) <= 0.005

    def test_scalar_and_vector_agree(self):
        elements = oracle.random_elements(3000, seed=6)
        h1, h2 = hashing.hash_many(elements, 0)
        for tag in (0, 1, 9):
            vec = hashing.activation_decisions(h1, h2, 0.37, tag)
            scalar = [hashing.activation_decision(HashPair(int(a), int(b)), 0.37, tag) for a, b in zip(h1, h2)]
            assert vec.tolist() == scalar

    def test_tags_decorrelate(self):
        h1, h2 = hashing.hash_many(oracle.random_elements(50_000, seed=7), 0)
        a = hashing.activation_decisions(h1, h2, 0.5, 1)
        b = hashing.activation_decisions(h1, h2, 0.5, 2)
        both = float((a & b).mean())
        assert abs(both - 0.25) < 0.01

    @given(u64, u64, st.floats(0, 1), st.integers(0, 64))
    @settings(max_examples=200)
    def test_monotone_in_probability(self, h1, h2, p, tag):
        pair = HashPair(h1, h2)
        if hashing.activation_decision(pair, p, tag):
            assert hashing.activation_decision(pair, min(1.0, p + 0.01), tag)


def test_block_pair_scalar_matches_vector():
    h1, h2 = hashing.hash_many(oracle.random_elements(500, seed=1), 0)
    a, b = hashing.block_pairs(h1, h2, 5)
    for x, y, u, v in zip(h1, h2, a, b):
        assert hashing.block_pair(HashPair(int(x), int(y)), 5) == (int(u), int(v))


def test_fmix64_vector_matches_scalar():
    vals = np.array([0, 1, 2**63, hashing.MASK64, 123456789], dtype=np.uint64)
    assert [int(v) for v in hashing.fmix64_array(vals)] == [hashing.fmix64(int(v)) for v in vals]
