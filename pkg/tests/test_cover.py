"""Tests for covering-family construction and verification."""

import logging
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparseparity.cover import (
    CoverFamily,
    CoverParams,
    binom,
    build_verified_family,
    family_size_m,
    ratio_bound_report,
    round_robin_parts,
    sample_family,
    verify_cover,
)
from sparseparity.errors import BudgetExceededError
from sparseparity.rng import SplitMix64


class TestBinom:
    def test_hand_checked(self):
        assert binom(10, 4) == 210

    def test_choose_zero(self):
        for x in [0, 1, 5, 100]:
            assert binom(x, 0) == 1

    def test_y_exceeding_x_is_zero(self):
        assert binom(5, 7) == 0

    def test_pascal_triangle_oracle(self):
        row = [1]
        for x in range(65):
            for y in range(x + 1):
                assert binom(x, y) == row[y]
            assert binom(x, x + 1) == 0
            row = [1] + [row[i] + row[i + 1] for i in range(x)] + [1]

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            binom(-1, 0)
        with pytest.raises(ValueError):
            binom(3, -2)


class TestCoverParams:
    def test_derived_part_count(self):
        p = CoverParams(n=12, k=2, t=3, alpha=2)
        assert p.T == 6

    def test_rejects_k_above_t(self):
        with pytest.raises(ValueError):
            CoverParams(n=12, k=4, t=3, alpha=2)

    def test_rejects_t_above_n(self):
        with pytest.raises(ValueError):
            CoverParams(n=2, k=1, t=3, alpha=2)

    def test_rejects_small_alpha(self):
        with pytest.raises(ValueError):
            CoverParams(n=12, k=2, t=3, alpha=1)

    def test_rejects_more_parts_than_coords(self):
        with pytest.raises(ValueError):
            CoverParams(n=5, k=1, t=3, alpha=2)


class TestFamilySizeM:
    def test_hand_checked_ratio_seven_and_a_half(self):
        # T=10, k=2, alpha*k=4: ratio 210/28 = 7.5, so
        # m = ceil(15 * ln C(10,2)) = ceil(15 * ln 45) = 58.
        p = CoverParams(n=10, k=2, t=5, alpha=2)
        assert family_size_m(p) == 58

    def test_hand_checked_ratio_three(self):
        # T=6, k=1, alpha*k=2: ratio 15/5 = 3, m = ceil(6 * ln 6) = 11.
        p = CoverParams(n=6, k=1, t=3, alpha=2)
        assert family_size_m(p) == 11

    def test_zero_sparsity_clamps_to_one(self):
        p = CoverParams(n=6, k=0, t=3, alpha=2)
        assert family_size_m(p) == 1


class TestRoundRobinParts:
    def test_divisible(self):
        parts = round_robin_parts(12, 6)
        assert all(len(part) == 2 for part in parts)
        assert parts[0] == (0, 6)

    def test_remainder_goes_to_low_parts(self):
        parts = round_robin_parts(13, 6)
        assert sorted(len(p) for p in parts) == [2, 2, 2, 2, 2, 3]
        assert max(len(p) for p in parts) == math.ceil(13 / 6)
        assert parts[0] == (0, 6, 12)

    def test_partition_properties(self):
        for n, T in [(12, 6), (13, 6), (7, 7), (30, 4)]:
            parts = round_robin_parts(n, T)
            assert len(parts) == T
            flat = [i for part in parts for i in part]
            assert sorted(flat) == list(range(n))
            assert all(list(part) == sorted(part) for part in parts)
            assert all(len(part) <= math.ceil(n / T) for part in parts)


class TestSampleFamily:
    def test_deterministic(self):
        p = CoverParams(n=12, k=2, t=3, alpha=2)
        assert sample_family(p, 7) == sample_family(p, 7)
        assert sample_family(p, 7) != sample_family(p, 8)

    def test_subset_shape(self):
        p = CoverParams(n=12, k=2, t=3, alpha=2)
        fam = sample_family(p, 3)
        assert fam.m == family_size_m(p)
        assert not fam.verified
        ak = p.alpha * p.k
        for s in fam.subsets:
            assert len(s) == ak
            assert len(set(s)) == ak
            assert list(s) == sorted(s)
            assert all(0 <= i < p.T for i in s)

    def test_support_coords(self):
        p = CoverParams(n=12, k=1, t=3, alpha=2)
        fam = CoverFamily(
            params=p,
            parts=round_robin_parts(12, 6),
            subsets=((0, 3),),
            verified=False,
        )
        assert fam.support_coords(0) == (0, 3, 6, 9)


def hand_family(n, k, t, alpha, subsets):
    p = CoverParams(n=n, k=k, t=t, alpha=alpha)
    return CoverFamily(
        params=p,
        parts=round_robin_parts(n, p.T),
        subsets=tuple(tuple(s) for s in subsets),
        verified=False,
    )


class TestVerifyCover:
    def test_universal_subset_covers(self):
        fam = hand_family(4, 2, 2, 2, [(0, 1, 2, 3)])
        certified, witness = verify_cover(fam)
        assert witness is None
        assert certified.verified

    def test_first_uncovered_pair_is_witness(self):
        fam = hand_family(4, 2, 2, 2, [(0, 1, 2)])
        unchanged, witness = verify_cover(fam)
        assert witness == (0, 3)
        assert not unchanged.verified

    def test_no_subsets_first_singleton_is_witness(self):
        fam = hand_family(4, 1, 2, 2, [])
        _, witness = verify_cover(fam)
        assert witness == (0,)

    def test_budget_enforced(self):
        fam = hand_family(4, 2, 2, 2, [(0, 1, 2, 3)])
        with pytest.raises(BudgetExceededError):
            verify_cover(fam, budget=5)

    def test_verification_does_not_mutate_input(self):
        fam = hand_family(4, 2, 2, 2, [(0, 1, 2, 3)])
        verify_cover(fam)
        assert not fam.verified


class TestBuildVerifiedFamily:
    def test_small_params_verify(self):
        p = CoverParams(n=16, k=2, t=4, alpha=2)
        fam = build_verified_family(p, rng_seed=1)
        assert fam.verified
        _, witness = verify_cover(fam)
        assert witness is None

    def test_first_attempt_matches_plain_sample_when_it_verifies(self):
        p = CoverParams(n=16, k=2, t=4, alpha=2)
        plain = sample_family(p, 5)
        _, witness = verify_cover(plain)
        if witness is None:
            built = build_verified_family(p, rng_seed=5)
            assert built.subsets == plain.subsets

    def test_over_budget_returns_unverified_with_warning(self, caplog):
        p = CoverParams(n=16, k=2, t=4, alpha=2)
        with caplog.at_level(logging.WARNING, logger="sparseparity.cover"):
            fam = build_verified_family(p, rng_seed=1, budget=3)
        assert not fam.verified
        assert fam == sample_family(p, 1)
        assert any("unverified" in r.message for r in caplog.records)

    def test_attempts_exhausted_raises(self, monkeypatch):
        p = CoverParams(n=16, k=2, t=4, alpha=2)
        bad = hand_family(16, 2, 4, 2, [])

        monkeypatch.setattr(
            "sparseparity.cover.sample_family", lambda params, seed: bad
        )
        with pytest.raises(BudgetExceededError):
            build_verified_family(p, rng_seed=1, attempts=3)

    def test_retry_seeds_derive_from_base_seed(self):
        # Two runs from the same base seed walk the same attempt sequence.
        p = CoverParams(n=24, k=3, t=4, alpha=3)
        a = build_verified_family(p, rng_seed=123)
        b = build_verified_family(p, rng_seed=123)
        assert a == b


class TestVerifiedCoverageSemantics:
    def test_every_sparse_support_lands_in_one_chart(self):
        p = CoverParams(n=20, k=2, t=4, alpha=2)
        fam = build_verified_family(p, rng_seed=11)
        supports = [fam.support_coords(i) for i in range(fam.m)]
        rng = SplitMix64(99)
        for _ in range(200):
            coords = rng.sample_sorted(p.n, p.k)
            assert any(set(coords) <= set(s) for s in supports)

    def test_sparse_support_touches_at_most_k_parts(self):
        parts = round_robin_parts(30, 10)
        owner = {}
        for j, part in enumerate(parts):
            for c in part:
                owner[c] = j
        rng = SplitMix64(4)
        for _ in range(200):
            coords = rng.sample_sorted(30, 3)
            assert len({owner[c] for c in coords}) <= 3


class TestRatioBoundReport:
    def test_zero_sparsity(self):
        rep = ratio_bound_report(t=5, k=0, alpha=2)
        assert rep.ratio_log2 == 0.0
        assert rep.rhs_log2 == 0.0
        assert rep.holds

    def test_equal_t_and_k_reports_without_failing(self):
        rep = ratio_bound_report(t=3, k=3, alpha=2)
        assert rep.ratio_log2 == 0.0
        assert rep.rhs_log2 == pytest.approx(-3 / 4.01 / math.log(2))
        assert not rep.holds

    def test_boolean_is_consistent_with_logs(self):
        for t, k, alpha in [(100, 2, 2), (1000, 10, 32), (50, 5, 4)]:
            rep = ratio_bound_report(t=t, k=k, alpha=alpha)
            assert rep.holds == (rep.ratio_log2 <= rep.rhs_log2)

    def test_exact_binomial_ratio_against_logs(self):
        rep = ratio_bound_report(t=10, k=2, alpha=2)
        expected = math.log2(binom(20, 4)) - math.log2(binom(18, 2))
        assert rep.ratio_log2 == pytest.approx(expected, abs=1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            ratio_bound_report(t=3, k=4, alpha=2)
        with pytest.raises(ValueError):
            ratio_bound_report(t=3, k=1, alpha=1)


@st.composite
def valid_params(draw):
    t = draw(st.integers(min_value=1, max_value=6))
    alpha = draw(st.integers(min_value=2, max_value=3))
    k = draw(st.integers(min_value=0, max_value=min(t, 3)))
    T = alpha * t
    n = draw(st.integers(min_value=T, max_value=T + 20))
    return CoverParams(n=n, k=k, t=t, alpha=alpha)


class TestFamilyProperties:
    @given(valid_params(), st.integers(min_value=0, max_value=2**64 - 1))
    @settings(max_examples=60, deadline=None)
    def test_sampled_family_invariants(self, params, seed):
        fam = sample_family(params, seed)
        flat = [i for part in fam.parts for i in part]
        assert sorted(flat) == list(range(params.n))
        assert all(
            len(part) <= math.ceil(params.n / params.T) for part in fam.parts
        )
        ak = params.alpha * params.k
        assert fam.m == family_size_m(params)
        for s in fam.subsets:
            assert len(s) == ak and len(set(s)) == ak
