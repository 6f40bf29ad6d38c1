import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from bullen_bounds.core import DEFAULT_TOLERANCES, IntegrationError, Interval, Tolerances
from bullen_bounds.oracle import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, integrate_value, oracle_integrate


class TestRuleConstants:
    def test_gauss_part_matches_legendre(self):
        x, w = np.polynomial.legendre.leggauss(7)
        gauss_nodes = NODES[1::2]
        np.testing.assert_allclose(gauss_nodes, x, atol=1e-15)
        np.testing.assert_allclose(GAUSS_WEIGHTS[1::2], w, atol=1e-15)
        assert np.all(GAUSS_WEIGHTS[0::2] == 0)

    def test_weights_sum_to_two(self):
        assert math.isclose(KRONROD_WEIGHTS.sum(), 2.0, rel_tol=1e-15)
        assert math.isclose(GAUSS_WEIGHTS.sum(), 2.0, rel_tol=1e-15)

    @pytest.mark.parametrize("k", range(23))
    def test_kronrod_exact_to_degree_22(self, k):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert abs(KRONROD_WEIGHTS @ NODES**k - exact) < 1e-14

    @pytest.mark.parametrize("k", range(14))
    def test_gauss_exact_to_degree_13(self, k):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert abs(GAUSS_WEIGHTS @ NODES**k - exact) < 1e-14


class TestOracle:
    def test_square(self):
        assert abs(oracle_integrate(lambda t: t**2, Interval(0, 1)).value - 1 / 3) <= 1e-12

    def test_exp(self):
        assert abs(oracle_integrate(np.exp, Interval(0, 1)).value - (math.e - 1)) <= 1e-12

    def test_parabolic_exp(self):
        v = oracle_integrate(lambda t: t * (1 - t) * np.exp(t), Interval(0, 1)).value
        assert abs(v - (3 - math.e)) <= 1e-12

    def test_scalar_integrand_broadcast(self):
        assert oracle_integrate(lambda t: 2.0, Interval(0, 3)).value == pytest.approx(6.0, abs=1e-14)

    def test_kink_needs_subdivision(self):
        res = oracle_integrate(lambda t: np.abs(t - 0.3), Interval(0, 1))
        assert abs(res.value - (0.3**2 + 0.7**2) / 2) <= 1e-12
        assert res.panels > 1

    def test_non_convergence_carries_estimate(self):
        with pytest.raises(IntegrationError) as info:
            oracle_integrate(lambda t: np.sign(np.sin(1.0 / np.maximum(t, 1e-300))), Interval(1e-12, 1), max_panels=50)
        assert math.isfinite(info.value.value)
        assert info.value.error > 0

    def test_nonfinite_integrand(self):
        with pytest.raises(IntegrationError):
            oracle_integrate(lambda t: 1.0 / (t - 0.5) ** 2 * np.where(t == t, np.inf, 0), Interval(0, 1))

    def test_integrate_value_orientation(self):
        assert integrate_value(np.exp, 0.0, 0.0) == 0.0
        assert integrate_value(np.exp, 1.0, 0.0) == pytest.approx(-(math.e - 1), abs=1e-13)

    @settings(max_examples=40, deadline=None)
    @given(
        c=st.floats(-5, 5),
        w=st.floats(0.1, 20),
        a=st.floats(-2, 2),
        length=st.floats(0.05, 4),
    )
    def test_against_scipy(self, c, w, a, length):
        f = lambda t: np.exp(c * t) * np.cos(w * t)  # noqa: E731
        mine = oracle_integrate(f, Interval(a, a + length)).value
        ref, _ = integrate.quad(lambda t: math.exp(c * t) * math.cos(w * t), a, a + length, epsabs=1e-14, epsrel=1e-14, limit=200)
        assert abs(mine - ref) <= 1e-11 * max(1.0, abs(ref))

    def test_tolerance_is_respected(self):
        loose = oracle_integrate(lambda t: np.sqrt(t), Interval(0, 1), Tolerances(oracle_abs=1e-4))
        tight = oracle_integrate(lambda t: np.sqrt(t), Interval(0, 1), DEFAULT_TOLERANCES)
        assert abs(tight.value - 2 / 3) <= 1e-12
        assert abs(loose.value - 2 / 3) <= 1e-4
        assert loose.panels <= tight.panels
