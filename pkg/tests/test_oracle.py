import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flexbloom import oracle
from flexbloom.oracle import TrialReport
from flexbloom.rational import RationalBloomFilter
from flexbloom.standard import StandardBloomFilter
from flexbloom.vsbbf import BlockLayout, VsbBloomFilter


class TestTrialReport:
    def test_estimate_and_error(self):
        r = TrialReport(400, 100)
        assert r.estimate == 0.25
        assert r.std_error == pytest.approx(math.sqrt(0.25 * 0.75 / 400))

    def test_degenerate_error_is_zero(self):
        assert TrialReport(10, 0).std_error == 0
        assert TrialReport(10, 10).std_error == 0

    @pytest.mark.parametrize("trials,hits", [(0, 0), (5, 6), (5, -1)])
    def test_rejects_invalid_counts(self, trials, hits):
        with pytest.raises(ValueError):
            TrialReport(trials, hits)

    def test_within(self):
        r = TrialReport(10_000, 500)  # se ~ 0.00218
        assert r.within(0.056)
        assert not r.within(0.06)
        assert r.within(0.06, rel=0.25)

    @given(st.lists(st.tuples(st.integers(1, 100), st.integers(0, 100)), min_size=1, max_size=8))
    def test_merge_is_order_independent(self, parts):
        reports = [TrialReport(t, min(h, t)) for t, h in parts]
        a = oracle.merge_reports(reports)
        b = oracle.merge_reports(reversed(reports))
        assert a == b
        folded = reports[0]
        for r in reports[1:]:
            folded = folded.merge(r)
        assert folded == a


def test_sub_seed_is_deterministic_and_spread():
    seeds = [oracle.sub_seed(7, i) for i in range(1000)]
    assert seeds == [oracle.sub_seed(7, i) for i in range(1000)]
    assert len(set(seeds)) == 1000
    assert oracle.sub_seed(7, 0) != oracle.sub_seed(8, 0)


class TestRandomElements:
    def test_distinct_and_deterministic(self):
        a = oracle.random_elements(5000, seed=1)
        assert len(set(a)) == 5000
        assert a == oracle.random_elements(5000, seed=1)
        assert a != oracle.random_elements(5000, seed=2)

    def test_exclusion_by_rejection(self):
        # 1-byte universe forces collisions with the excluded set
        excluded = {bytes([i]) for i in range(200)}
        got = oracle.random_elements(56, seed=3, exclude=excluded, length=1)
        assert excluded.isdisjoint(got)
        assert sorted(got) == [bytes([i]) for i in range(200, 256)]


def test_exact_membership_oracle():
    s = {b"a", b"b"}
    assert oracle.exact_membership_oracle(s, b"a")
    assert not oracle.exact_membership_oracle(s, b"c")


def test_filter_only_errs_towards_present():
    inserted = oracle.random_elements(300, seed=4)
    members = set(inserted)
    f = StandardBloomFilter(1024, 3)
    f.add_many(inserted)
    probes = inserted[:100] + oracle.random_elements(3000, seed=5)
    for p, verdict in zip(probes, f.contains_many(probes)):
        truth = oracle.exact_membership_oracle(members, p)
        assert verdict or not truth


class TestEstimateFpr:
    def test_empty_filter(self):
        r = oracle.estimate_fpr(StandardBloomFilter(512, 2), [], 2000, seed=1)
        assert r.hits == 0

    def test_saturated_filter(self):
        f = StandardBloomFilter(64, 2)
        f.bits.set_many(np.arange(64))
        assert oracle.estimate_fpr(f, [], 2000, seed=1).estimate == 1.0

    def test_deterministic(self):
        inserted = oracle.random_elements(100, seed=2)
        f = RationalBloomFilter(1024, 2.5)
        f.add_many(inserted)
        assert oracle.estimate_fpr(f, inserted, 3000, 9) == oracle.estimate_fpr(f, inserted, 3000, 9)


class TestClashRate:
    def test_single_probe_never_clashes(self):
        assert oracle.estimate_clash_rate(StandardBloomFilter(24, 1), 5000, seed=1).hits == 0

    def test_m8_k2(self):
        r = oracle.estimate_clash_rate(StandardBloomFilter(8, 2), 200_000, seed=2)
        assert r.within(1 / 8)

    def test_has_clash_ignores_inactive_slots(self):
        idx = np.array([[3, 3, 5], [1, 2, 2], [4, 4, 4]])
        active = np.array([[True, False, True], [True, True, True], [False, False, True]])
        assert oracle.has_clash(idx, active).tolist() == [False, True, False]

    def test_block_clash_is_per_block(self):
        lay = BlockLayout.from_table([(16, 2.0), (8, 2.0)])
        r = oracle.estimate_clash_rate(VsbBloomFilter(24, 1, layout=lay), 200_000, seed=3)
        assert r.within(1 / 16 + 1 / 8 - 1 / 128)


def test_activation_rate():
    for p in (0.0, 1.0):
        assert oracle.estimate_activation_rate(p, 2000, seed=1).estimate == p
    assert oracle.estimate_activation_rate(0.3, 100_000, seed=2).within(0.3)
