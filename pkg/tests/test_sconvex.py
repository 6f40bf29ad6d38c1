import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from bullen_bounds.core import (
    DomainError,
    Interval,
    PowerMeanExponent,
    SecondDerivTriple,
    SExponent,
    Status,
    bound_holds,
    make_frame,
    make_holder,
)
from bullen_bounds.kernel import kernel_array, lhs_functional
from bullen_bounds.registry import builtin_registry, get_entry
from bullen_bounds.sconvex import (
    Variant,
    bound_cor21,
    bound_cor22,
    bound_cor23_bullen,
    bound_ostrowski,
    bound_thm21,
    bound_thm22,
    bound_thm23,
    bound_thm24,
    check_bullen_classic,
    check_ostrowski,
    euler_beta,
)

S1 = SExponent(1.0)
POWER_CLOSED = [e.id for e in builtin_registry() if "power-closed" in e.tags]


def bullen_lhs(fn, iv):
    fa, fm, fb = fn.f(np.array([iv.a, iv.midpoint, iv.b]))
    F = fn.antiderivative(np.array([iv.a, iv.b]))
    return 0.5 * (fm + 0.5 * (fa + fb)) - (F[1] - F[0]) / iv.length


class TestBeta:
    @pytest.mark.parametrize("u,v,expected", [(2, 2, 1 / 6), (3, 3, 1 / 30), (1, 1, 1.0)])
    def test_values(self, u, v, expected):
        assert euler_beta(u, v) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("u,v", [(2.5, 2.5), (4, 4), (0.3, 7.1), (90, 100), (300, 250.5)])
    def test_against_mpmath(self, u, v):
        assert euler_beta(u, v) == pytest.approx(float(mpmath.beta(u, v)), rel=1e-12)

    @given(st.floats(0.1, 50), st.floats(0.1, 50))
    def test_symmetry_and_recurrence(self, u, v):
        assert euler_beta(u, v) == pytest.approx(euler_beta(v, u), rel=1e-12)
        assert euler_beta(u + 1, v) == pytest.approx(euler_beta(u, v) * u / (u + v), rel=1e-12)

    @pytest.mark.parametrize("u,v", [(0, 1), (-1, 2), (1, math.inf)])
    def test_rejects(self, u, v):
        with pytest.raises(DomainError):
            euler_beta(u, v)


class TestTheorem21:
    def test_quadratic_equality(self, centre_frame):
        assert bound_thm21(SecondDerivTriple(2, 2, 2), centre_frame, S1) == pytest.approx(1 / 12, rel=1e-15)

    def test_zero_triple(self, centre_frame):
        assert bound_thm21(SecondDerivTriple(0, 0, 0), centre_frame, S1) == 0.0

    def test_quartic(self, centre_frame):
        fn = get_entry("quartic").fn
        d = fn.triple(centre_frame)
        assert (d.at_a, d.at_x, d.at_b) == (0.0, 3.0, 12.0)
        rhs = bound_thm21(d, centre_frame, S1)
        assert rhs == pytest.approx(0.1875, rel=1e-15)
        assert bound_holds(lhs_functional(fn, centre_frame), rhs)

    @given(st.floats(0.05, 0.95), st.floats(0, 5), st.floats(0.01, 5))
    def test_equality_for_quadratic(self, frac, alpha, beta):
        fn = get_entry("quadratic").fn
        fr = make_frame(0, 3, 3 * frac, alpha, beta)
        lhs = lhs_functional(fn, fr)
        assert abs(bound_thm21(fn.triple(fr), fr, S1) - abs(lhs)) <= 1e-10 * abs(lhs)

    def test_decreasing_in_s(self):
        fr = make_frame(0, 1, 0.3, 2, 5)
        d = SecondDerivTriple(1.0, 2.0, 0.5)
        values = [bound_thm21(d, fr, SExponent(s)) for s in np.linspace(0.05, 1, 20)]
        assert all(x > y for x, y in zip(values, values[1:]))


class TestCorollaries:
    def test_cor21_constant(self, centre_frame):
        assert bound_cor21(2.0, centre_frame, S1) == pytest.approx(1 / 12, rel=1e-15)

    def test_cor21_zero(self, centre_frame):
        assert bound_cor21(0.0, centre_frame, S1) == 0.0

    def test_cor21_skewed(self):
        assert bound_cor21(1.0, make_frame(0, 1, 0.25, 1, 3), SExponent(0.5)) == pytest.approx(0.1, rel=1e-14)

    def test_cor21_negative_m(self, centre_frame):
        with pytest.raises(DomainError):
            bound_cor21(-1.0, centre_frame, S1)

    @given(st.floats(0, 10), st.floats(0.05, 0.95), st.floats(0, 5), st.floats(0.01, 5), st.floats(0.01, 1))
    def test_cor21_matches_constant_triple(self, M, frac, alpha, beta, s):
        fr = make_frame(-1, 2, -1 + 3 * frac, alpha, beta)
        sx = SExponent(s)
        assert bound_cor21(M, fr, sx) == pytest.approx(bound_thm21(SecondDerivTriple(M, M, M), fr, sx), rel=1e-13, abs=1e-300)

    @given(st.floats(0.05, 0.95), st.floats(0.01, 1))
    def test_cor22_is_unit_weight_thm21(self, frac, s):
        iv = Interval(0, 2)
        d = SecondDerivTriple(0.3, 1.7, 2.2)
        x = 2 * frac
        sx = SExponent(s)
        assert bound_cor22(d, iv, x, sx) == pytest.approx(bound_thm21(d, make_frame(0, 2, x, 1, 1), sx), rel=1e-14)

    def test_cor23_quadratic_equality(self, unit):
        fn = get_entry("quadratic").fn
        rhs = bound_cor23_bullen(SecondDerivTriple(2, 2, 2), unit, S1)
        assert rhs == pytest.approx(1 / 24, rel=1e-15)
        assert abs(bullen_lhs(fn, unit)) == pytest.approx(1 / 24, rel=1e-14)

    def test_cor23_zero(self, unit):
        assert bound_cor23_bullen(SecondDerivTriple(0, 0, 0), unit, S1) == 0.0

    def test_cor23_exp(self, unit):
        fn = get_entry("exp1").fn
        d = fn.second_derivs(0, 0.5, 1)
        rhs = bound_cor23_bullen(d, unit, S1)
        assert rhs == pytest.approx((math.exp(0.5) + (1 + math.e) / 2) / 96, rel=1e-15)
        assert abs(bullen_lhs(fn, unit)) <= rhs


def holder_oracle(fn, fr, h, whole=False):
    """Hoelder step of the kernel estimate computed by brute-force quadrature."""
    K = lambda t: float(kernel_array(fr, np.array(t)))  # noqa: E731
    g = lambda t: float(abs(fn.f2(np.array(t)))) ** h.q  # noqa: E731
    opts = dict(epsabs=1e-14, epsrel=1e-13, limit=200)
    parts = [(fr.a, fr.b)] if whole else [(fr.a, fr.x), (fr.x, fr.b)]
    total = 0.0
    for lo, hi in parts:
        kp = integrate.quad(lambda t: K(t) ** h.p, lo, hi, points=[fr.x] if whole else None, **opts)[0]
        gq = integrate.quad(g, lo, hi, **opts)[0]
        total += kp ** (1 / h.p) * gq ** (1 / h.q)
    return total


class TestHolderBounds:
    def test_zero_triple(self, centre_frame):
        d = SecondDerivTriple(0, 5, 0)
        d0 = SecondDerivTriple(0, 0, 0)
        for v in Variant:
            assert bound_thm23(d, centre_frame, S1, make_holder(2), v) == 0.0
            assert bound_thm22(d0, centre_frame, S1, make_holder(2), v) == 0.0

    def test_beta_factor_p2(self, centre_frame):
        # constant triple: derived per half is w len^2 B(3,3)^(1/2) (2 c^2)^(1/2) / 2^(1/2)
        d = SecondDerivTriple(1, 1, 1)
        expected = 2 * 0.5 * 0.25 * (1 / 30) ** 0.5
        assert bound_thm22(d, centre_frame, S1, make_holder(2)) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    @pytest.mark.parametrize("frame", [(0, 1, 0.5, 1, 1), (0, 3, 0.7, 2, 5), (1, 3, 2.6, 5, 2)])
    def test_derived_thm22_is_holder_step_for_constant(self, p, frame):
        fn = get_entry("quadratic").fn
        fr = make_frame(*frame)
        h = make_holder(p)
        derived = bound_thm22(fn.triple(fr), fr, S1, h)
        assert derived == pytest.approx(holder_oracle(fn, fr, h), rel=1e-10)

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    @pytest.mark.parametrize("frame", [(0, 1, 0.5, 1, 1), (0, 3, 0.7, 2, 5)])
    def test_derived_thm23_is_holder_step_for_constant(self, p, frame):
        fn = get_entry("quadratic").fn
        fr = make_frame(*frame)
        h = make_holder(p)
        derived = bound_thm23(fn.triple(fr), fr, S1, h)
        assert derived == pytest.approx(holder_oracle(fn, fr, h, whole=True), rel=1e-10)

    @pytest.mark.parametrize("fn_id", ["quartic", "exp1", "exp_sq", "power_s(1/2)"])
    def test_derived_dominates_holder_step(self, fn_id):
        entry = get_entry(fn_id)
        fn = entry.fn
        s = fn.s_membership
        for frame in [(0, 1, 0.3, 1, 1), (0, 1, 0.8, 2, 5)]:
            fr = make_frame(*frame)
            for p in (1.5, 3.0):
                h = make_holder(p)
                assert bound_thm22(fn.triple(fr), fr, s, h) >= holder_oracle(fn, fr, h) * (1 - 1e-12)
                assert bound_thm23(fn.triple(fr), fr, s, h) >= holder_oracle(fn, fr, h, whole=True) * (1 - 1e-12)

    def test_stated_thm23_bracket_ratio_sqrt2(self, centre_frame):
        d = SecondDerivTriple(1.0, 2.0, 3.0)
        h = make_holder(2)
        ratio = bound_thm23(d, centre_frame, S1, h, Variant.STATED) / bound_thm23(d, centre_frame, S1, h, Variant.DERIVED)
        assert ratio == pytest.approx(math.sqrt(2), rel=1e-14)

    def test_stated_thm22_can_fail(self, centre_frame):
        fn = get_entry("quadratic").fn
        stated = bound_thm22(fn.triple(centre_frame), centre_frame, S1, make_holder(2), Variant.STATED)
        assert stated < lhs_functional(fn, centre_frame)


class TestTheorem24:
    @given(st.floats(0.05, 0.95), st.floats(0, 5), st.floats(0.01, 5), st.floats(0.01, 1),
           st.tuples(st.floats(0, 10), st.floats(0, 10), st.floats(0, 10)))
    def test_q1_reduces_to_thm21(self, frac, alpha, beta, s, trip):
        fr = make_frame(0, 1, frac, alpha, beta)
        d = SecondDerivTriple(*trip)
        sx = SExponent(s)
        a, b = bound_thm24(d, fr, sx, PowerMeanExponent(1.0)), bound_thm21(d, fr, sx)
        assert abs(a - b) <= 1e-12 * abs(b)

    @pytest.mark.parametrize("q", [1.0, 1.5, 2.0, 3.0, 7.0])
    def test_constant_triple_gives_equality_value(self, centre_frame, q):
        assert bound_thm24(SecondDerivTriple(2, 2, 2), centre_frame, S1, PowerMeanExponent(q)) == pytest.approx(1 / 12, rel=1e-14)

    def test_zero(self, centre_frame):
        assert bound_thm24(SecondDerivTriple(0, 0, 0), centre_frame, S1, PowerMeanExponent(2)) == 0.0


class TestDomination:
    @settings(max_examples=80, deadline=None)
    @given(st.sampled_from(POWER_CLOSED), st.floats(0.02, 0.98), st.floats(0, 5), st.floats(0.01, 5),
           st.floats(1.1, 6), st.floats(1, 6))
    def test_all_s_bounds(self, fn_id, frac, alpha, beta, p, q):
        fn = get_entry(fn_id).fn
        dom = fn.domain
        fr = make_frame(dom.a, dom.b, dom.a + frac * dom.length, alpha, beta)
        s = fn.s_membership
        d = fn.triple(fr)
        lhs = lhs_functional(fn, fr)
        h = make_holder(p)
        for rhs in (
            bound_thm21(d, fr, s),
            bound_thm22(d, fr, s, h),
            bound_thm23(d, fr, s, h),
            bound_thm24(d, fr, s, PowerMeanExponent(q)),
        ):
            assert bound_holds(lhs, rhs)


class TestBaselines:
    def test_ostrowski_values(self, unit):
        assert bound_ostrowski(1.0, unit, 0.5) == 0.25
        assert bound_ostrowski(0.0, unit, 0.5) == 0.0
        assert bound_ostrowski(1.0, unit, 0.0) == 0.5

    def test_ostrowski_rejects(self, unit):
        with pytest.raises(DomainError):
            bound_ostrowski(-1.0, unit, 0.5)
        with pytest.raises(DomainError):
            bound_ostrowski(1.0, unit, 2.0)

    def test_check_ostrowski_exp(self, unit):
        r = check_ostrowski(get_entry("exp1").fn, unit, 0.5)
        assert r.rhs == pytest.approx(0.25 * math.e, rel=1e-15)
        assert r.lhs == pytest.approx(math.exp(0.5) - (math.e - 1), rel=1e-14)
        assert r.status is Status.HOLDS

    def test_bullen_quadratic(self, unit):
        r = check_bullen_classic(get_entry("quadratic").fn, unit)
        assert r.lhs == pytest.approx(1 / 3, rel=1e-15) and r.rhs == pytest.approx(3 / 8, rel=1e-15)
        assert r.status is Status.HOLDS and r.signed

    def test_bullen_linear_equality(self, unit):
        r = check_bullen_classic(get_entry("linear").fn, unit)
        assert r.lhs == pytest.approx(r.rhs, abs=1e-15)

    def test_bullen_exp(self, unit):
        assert check_bullen_classic(get_entry("exp1").fn, unit).status is Status.HOLDS
