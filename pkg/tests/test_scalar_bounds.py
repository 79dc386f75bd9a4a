"""Tests for the entropy-gap bound functions and their inverses."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relay_bounds.errors import ConvergenceError, DomainError
from relay_bounds.scalar_bounds import (
    DEFAULT_TOL,
    Tolerance,
    bdd_gap_closed,
    bdd_gap_inverse,
    bdd_gap_variational,
    gauss_gap_closed,
    gauss_gap_inverse,
    gauss_gap_relaxed,
    gauss_gap_variational,
    lemma3_gap,
    lemma3_h2max,
    relaxed_gap_inverse,
)

# golden-section value of min_t {t + 0.5/(1 - e^{-2t})}, frozen from the
# variational oracle; analytically ln(phi) + phi/2 with phi the golden ratio
C_AT_HALF = 1.2902288194345508

LOG_GRID = np.logspace(-8, 2, 41)
ALPHAS = (1.01, 1.5, 2.0, 5.0, 50.0)

rates = st.floats(min_value=0.0, max_value=1e3, allow_nan=False, allow_infinity=False)
positive_rates = st.floats(min_value=1e-9, max_value=1e3, allow_nan=False)


class TestGaussGap:
    def test_zero(self):
        assert gauss_gap_closed(0.0) == 0.0

    def test_small_h_matches_sqrt_asymptotic(self):
        h = 1e-8
        assert gauss_gap_closed(h) / math.sqrt(2.0 * h) == pytest.approx(1.0, rel=1e-2)

    def test_frozen_value_at_half(self):
        assert gauss_gap_closed(0.5) == pytest.approx(C_AT_HALF, abs=1e-12)

    @pytest.mark.parametrize("h", [0.5, 1.0, 10.0])
    def test_matches_variational_oracle(self, h):
        assert abs(gauss_gap_closed(h) - gauss_gap_variational(h)) <= 1e-9

    def test_closed_vs_oracle_on_log_grid(self):
        for h in LOG_GRID:
            assert abs(gauss_gap_closed(h) - gauss_gap_variational(h)) <= 1e-8

    def test_variational_zero_is_infimum(self):
        assert gauss_gap_variational(0.0) == 0.0

    @given(rates)
    def test_dominates_identity(self, h):
        assert gauss_gap_closed(h) >= h

    @given(positive_rates)
    def test_below_relaxed(self, h):
        assert gauss_gap_closed(h) < gauss_gap_relaxed(h)

    @given(st.tuples(rates, rates))
    def test_monotone(self, pair):
        a, b = sorted(pair)
        assert gauss_gap_closed(a) <= gauss_gap_closed(b)

    @pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf"), -1e-12])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            gauss_gap_closed(bad)

    def test_rate_cap(self):
        with pytest.raises(DomainError):
            gauss_gap_closed(2e15)


class TestRelaxedGap:
    @pytest.mark.parametrize("h,expected", [(0.0, 0.0), (2.0, 4.0), (0.5, 1.5)])
    def test_values(self, h, expected):
        assert gauss_gap_relaxed(h) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("c0,expected", [(0.0, 0.0), (4.0, 2.0), (1.5, 0.5)])
    def test_inverse_values(self, c0, expected):
        assert relaxed_gap_inverse(c0) == pytest.approx(expected, abs=1e-12)

    @given(rates)
    def test_round_trip(self, h):
        assert relaxed_gap_inverse(gauss_gap_relaxed(h)) == pytest.approx(
            h, abs=1e-9 * max(1.0, h)
        )

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            gauss_gap_relaxed(-0.1)
        with pytest.raises(DomainError):
            relaxed_gap_inverse(-0.1)


class TestGaussGapInverse:
    def test_zero(self):
        assert gauss_gap_inverse(0.0) == 0.0

    def test_round_trip_point(self):
        c = gauss_gap_closed(0.3)
        assert gauss_gap_inverse(c) == pytest.approx(0.3, abs=DEFAULT_TOL.abs_tol * 10)

    def test_residual_at_one(self):
        h = gauss_gap_inverse(1.0)
        assert abs(gauss_gap_closed(h) - 1.0) <= 1e-10

    def test_round_trips_on_grid(self):
        for h in LOG_GRID:
            assert abs(gauss_gap_inverse(gauss_gap_closed(h)) - h) <= 1e-9

    def test_max_iter_exhaustion(self):
        with pytest.raises(ConvergenceError):
            gauss_gap_inverse(1.0, Tolerance(abs_tol=1e-10, max_iter=3))


class TestImplicitBound:
    @pytest.mark.parametrize(
        "h2,expected",
        [(0.0, 0.0), (0.5, 0.5 * math.log(2.0)), ((math.e**2 - 1.0) / 2.0, 1.0)],
    )
    def test_gap_values(self, h2, expected):
        assert lemma3_gap(h2) == pytest.approx(expected, abs=1e-12)

    def test_h2max_zero(self):
        assert lemma3_h2max(0.0) == 0.0

    def test_h2max_round_trip(self):
        h1 = 1.0 - 0.5 * math.log(3.0)  # g(1.0)
        assert lemma3_h2max(h1) == pytest.approx(1.0, abs=DEFAULT_TOL.abs_tol * 10)

    def test_h2max_round_trips_on_grid(self):
        for h2 in np.logspace(-6, 3, 31):
            h1 = h2 - 0.5 * math.log1p(2.0 * h2)
            assert abs(lemma3_h2max(h1) - h2) <= 1e-9

    @given(st.tuples(rates, rates))
    def test_monotone(self, pair):
        a, b = sorted(pair)
        assert lemma3_gap(a) <= lemma3_gap(b)
        assert lemma3_h2max(a) <= lemma3_h2max(b) + 1e-10

    def test_large_argument(self):
        # g(h2) = 3 solves near h2 = 3 + 0.5*ln(1+2*h2)
        h2 = lemma3_h2max(3.0)
        assert h2 - 0.5 * math.log1p(2.0 * h2) == pytest.approx(3.0, abs=1e-9)


class TestBddGap:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_zero(self, alpha):
        assert bdd_gap_closed(0.0, alpha) == 0.0

    def test_alpha_one_is_identity(self):
        assert bdd_gap_closed(0.7, 1.0) == 0.7
        assert bdd_gap_inverse(0.4, 1.0) == 0.4

    def test_matches_oracle_alpha2(self):
        assert abs(bdd_gap_closed(0.3, 2.0) - bdd_gap_variational(0.3, 2.0)) <= 1e-9

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_closed_vs_oracle_on_log_grid(self, alpha):
        for h in LOG_GRID:
            assert abs(bdd_gap_closed(h, alpha) - bdd_gap_variational(h, alpha)) <= 1e-8

    def test_tiny_alpha_minus_one_expansion(self):
        # the expansion branch must stay continuous with the direct formula
        direct = bdd_gap_closed(0.3, 1.0 + 1e-11)
        expanded = bdd_gap_closed(0.3, 1.0 + 1e-13)
        assert direct == pytest.approx(0.3, abs=1e-8)
        assert expanded == pytest.approx(0.3, abs=1e-10)
        assert expanded >= 0.3

    @given(rates, st.floats(min_value=1.0, max_value=1e3, allow_nan=False))
    def test_dominates_identity(self, h, alpha):
        assert bdd_gap_closed(h, alpha) >= h - 1e-12 * max(1.0, h)

    @given(st.tuples(rates, rates), st.sampled_from(ALPHAS))
    def test_monotone_in_h(self, pair, alpha):
        a, b = sorted(pair)
        assert bdd_gap_closed(a, alpha) <= bdd_gap_closed(b, alpha) + 1e-12

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bdd_gap_closed(-0.1, 2.0)
        with pytest.raises(DomainError):
            bdd_gap_closed(0.1, 0.99)


class TestBddGapInverse:
    def test_zero(self):
        assert bdd_gap_inverse(0.0, 3.0) == 0.0

    def test_round_trip_point(self):
        c = bdd_gap_closed(0.2, 3.0)
        assert bdd_gap_inverse(c, 3.0) == pytest.approx(0.2, abs=DEFAULT_TOL.abs_tol * 10)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_round_trips_on_grid(self, alpha):
        for h in np.logspace(-6, 2, 17):
            c = bdd_gap_closed(h, alpha)
            assert abs(bdd_gap_inverse(c, alpha) - h) <= 1e-9


class TestAsymptotics:
    def test_gauss_small_h(self):
        assert gauss_gap_closed(1e-8) / math.sqrt(2e-8) == pytest.approx(1.0, rel=1e-2)

    def test_gauss_large_h(self):
        assert gauss_gap_closed(1e6) / 1e6 == pytest.approx(1.0, rel=1e-2)

    def test_implicit_small_h1(self):
        assert lemma3_h2max(1e-8) / 1e-4 == pytest.approx(1.0, rel=1e-2)

    def test_implicit_large_h1(self):
        assert lemma3_h2max(1e6) / 1e6 == pytest.approx(1.0, rel=1e-2)


class TestTolerance:
    def test_defaults(self):
        assert DEFAULT_TOL.abs_tol == 1e-10
        assert DEFAULT_TOL.max_iter == 200

    @pytest.mark.parametrize("kwargs", [{"abs_tol": 0.0}, {"abs_tol": -1.0}, {"max_iter": 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            Tolerance(**kwargs)
