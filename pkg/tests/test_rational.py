import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flexbloom import analysis, hashing, oracle
from flexbloom.analysis import FilterParams
from flexbloom.probes import probe_matrix
from flexbloom.rational import RationalBloomFilter
from flexbloom.standard import StandardBloomFilter


def test_integer_k_equals_standard_filter():
    elements = oracle.random_elements(400, seed=1)
    r = RationalBloomFilter(1024, 2.0, seed=5)
    s = StandardBloomFilter(1024, 2, seed=5)
    r.add_many(elements)
    s.add_many(elements)
    assert r.bits == s.bits
    assert r.p_activation == 0.0


def test_mean_active_hashes_at_k_2_3():
    f = RationalBloomFilter(1 << 16, 2.3)
    h1, h2 = hashing.hash_many(oracle.random_elements(100_000, seed=2), f.seed)
    fired = hashing.activation_decisions(h1, h2, f.p_activation, 0)
    mean = 2 + fired.mean()
    assert 2.29 <= mean <= 2.31


def test_unactivated_element_sets_nothing():
    f = RationalBloomFilter(64, 0.4)
    quiet = next(e for e in oracle.random_elements(100, seed=3) if f.effective_hash_count(e) == 0)
    f.add(quiet)
    assert f.bits.ones_count == 0
    assert f.inserted_count == 1
    # zero active probes: vacuously present, consistent with no false negatives
    assert quiet in f


def test_effective_hash_count():
    elements = oracle.random_elements(100_000, seed=4)
    f3 = RationalBloomFilter(256, 3.0)
    assert {f3.effective_hash_count(e) for e in elements[:500]} == {3}
    f = RationalBloomFilter(256, 0.999)
    assert {f.effective_hash_count(e) for e in elements[:500]} <= {0, 1}
    g = RationalBloomFilter(256, 1.7)
    h1, h2 = hashing.hash_many(elements, g.seed)
    _, active = probe_matrix(h1, h2, g.groups)
    assert abs(active.sum(axis=1).mean() - 1.7) <= 0.01


@pytest.mark.parametrize("kwargs", [dict(m=24, k=1.5), dict(m=16, k=0), dict(m=16, k=-1.0), dict(m=16, k=math.inf)])
def test_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        RationalBloomFilter(**kwargs)


@given(
    st.integers(0, 14),
    st.floats(0.01, 8.0, allow_nan=False),
    st.lists(st.binary(max_size=10), max_size=60),
    st.integers(0, 2**64 - 1),
)
@settings(max_examples=80, deadline=None)
def test_no_false_negatives(c, k, elements, seed):
    f = RationalBloomFilter(1 << c, k, seed)
    f.add_many(elements)
    assert f.contains_many(elements).all()
    assert all(f.query(e) for e in elements)


def test_activation_consistent_across_inserts():
    f = RationalBloomFilter(512, 1.5, seed=7)
    probe = oracle.random_elements(300, seed=5)
    before = [f.effective_hash_count(e) for e in probe]
    f.add_many(oracle.random_elements(1000, seed=6))
    assert [f.effective_hash_count(e) for e in probe] == before


def test_scalar_and_batch_paths_agree():
    elements = oracle.random_elements(500, seed=8)
    probes = oracle.random_elements(2000, seed=9)
    a, b = RationalBloomFilter(2048, 2.6, 3), RationalBloomFilter(2048, 2.6, 3)
    a.add_many(elements)
    for e in elements:
        b.add(e)
    assert a.bits == b.bits
    assert a.contains_many(probes).tolist() == [b.query(p) for p in probes]


def test_foz_matches_real_k_model():
    m, n, k = 1 << 14, 4000, 2.7
    fozs = []
    for rep in range(30):
        f = RationalBloomFilter(m, k, seed=oracle.sub_seed(5, rep))
        f.add_many(oracle.random_elements(n, seed=oracle.sub_seed(6, rep)))
        fozs.append(f.fraction_of_zeros())
    se = np.std(fozs, ddof=1) / np.sqrt(len(fozs))
    expected = analysis.expected_foz(FilterParams(m, n, k))
    assert abs(np.mean(fozs) - expected) <= 3 * se
    assert abs(expected - analysis.expected_foz_rational(m, n, k)) < 1e-4


@pytest.mark.parametrize("k", [0.4, 1.3, 2.5, 3.9])
def test_conditional_fpr_decomposition(k):
    m, n = 1 << 14, 3000
    inserted = oracle.random_elements(n, seed=int(k * 10))
    f = RationalBloomFilter(m, k, seed=1)
    f.add_many(inserted)
    report = oracle.estimate_fpr(f, inserted, 20_000, seed=2)
    assert report.within(analysis.fpr_rational(f.fraction_of_zeros(), k))
