from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from hahnseries import (
    DomainError,
    ExplicitTable,
    FiniteChain,
    GeneralShift,
    IntegerChain,
    LogExpChain,
    Monomial,
    NoAsymptoticIntegral,
    Series,
    ShiftMonomial,
    derive,
    parse_series,
)
from hahnseries.asympint import (
    GlbKind,
    asymptotic_integral,
    integral_case,
    integrate,
    log_derivative_lm,
    rosenlicht_u0,
    theta_glb,
    theta_info,
)
from oracles import sympy_derivative_matches
from strategies import monomials, nonzero_series

LE = LogExpChain()


def s(text):
    return parse_series(text, LE.chain)


def mono(text):
    return s(text).leading_monomial


class TestAsymptoticIntegral:
    @pytest.mark.parametrize("a, expected, case", [
        ("E_1", "E_1", 1),
        ("x", "1/2*x^2", 1),
        ("x^-1", "E_-1", 3),
        ("E_-1", "x*E_-1", 2),
        ("1", "x", 3),
    ])
    def test_worked_values(self, a, expected, case):
        assert asymptotic_integral(LE, s(a)) == s(expected)
        assert integral_case(LE, mono(a))[0] == case

    def test_scales_with_coefficient(self):
        assert asymptotic_integral(LE, s("-3*x + E_-1")) == s("-3/2*x^2")

    def test_theta_info(self):
        info = theta_info(LE, -1)
        assert info.theta == mono("x^-1*E_-1^-1") and info.F == 1

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            asymptotic_integral(LE, Series())


@settings(max_examples=200)
@given(monomials(keys=range(-3, 4)))
def test_leading_term_contract(alpha):
    b = asymptotic_integral(LE, Series.monomial(alpha, 5))
    assert derive(LE, b).leading_term == Series.monomial(alpha, 5)


class TestGlb:
    def test_single_element(self):
        chain = FiniteChain(("x",))
        sch = ExplicitTable(chain, {"x": parse_series("x^-1", chain)})
        g = theta_glb(sch)
        assert g.kind is GlbKind.ATTAINED and g.value == Monomial.fundamental(0, -1)
        with pytest.raises(NoAsymptoticIntegral):
            asymptotic_integral(sch, parse_series("2*x^-1", chain))
        # x^2 integrates to x^3/3 inside this one-element field
        assert asymptotic_integral(sch, parse_series("x^2", chain)) == parse_series("1/3*x^3", chain)

    def test_logexp(self):
        assert theta_glb(LE).kind is GlbKind.NOT_IN_GAMMA

    def test_shift_without_least_element(self):
        # every theta lies above 1 and the thetas approach 1, so 1 is the bound
        # and constants have no asymptotic integral
        sch = ShiftMonomial(IntegerChain("phi_{k}", shift_step=1), (1,))
        g = theta_glb(sch)
        assert g.kind is GlbKind.ATTAINED and g.value.is_one()
        with pytest.raises(NoAsymptoticIntegral):
            asymptotic_integral(sch, Series.constant(1))

    def test_general_shift(self):
        gamma = Monomial.fundamental(3, -1)
        sch = GeneralShift(IntegerChain("phi_{k}", shift_step=1), gamma, [(1, (1,))])
        assert theta_glb(sch).value == gamma
        with pytest.raises(NoAsymptoticIntegral):
            asymptotic_integral(sch, Series.monomial(gamma))
        b = asymptotic_integral(sch, Series.monomial(Monomial.fundamental(0)))
        assert derive(sch, b).leading_monomial == Monomial.fundamental(0)


class TestIntegrate:
    @pytest.mark.parametrize("a, budget, expected, steps", [
        ("E_-1", 4, "x*E_-1 - x", 2),
        ("1", 1, "x", 1),
        ("x^-1*E_-1^-1", 1, "E_-2", 1),
        ("x*E_1", 4, "x*E_1 - E_1", 2),
        ("x^2 + 3", 3, "1/3*x^3 + 3*x", 2),
    ])
    def test_exact(self, a, budget, expected, steps):
        res = integrate(LE, s(a), budget)
        assert res.exact and res.residual.is_zero()
        assert res.antiderivative == s(expected) and res.steps_used == steps
        assert sympy_derivative_matches(res.antiderivative, s(a))

    def test_budget_cut(self):
        res = integrate(LE, s("E_-1"), 1)
        assert not res.exact and res.residual == s("-1")
        assert derive(LE, res.antiderivative) + res.residual == s("E_-1")

    def test_divergent_refinement_stops(self):
        # the exponential integral has no finite closed form here
        res = integrate(LE, s("x^-1*E_1"), 5)
        assert not res.exact and res.steps_used == 5
        assert len(res.trace) == 6

    def test_rejects(self):
        with pytest.raises(DomainError):
            integrate(LE, Series(), 3)
        with pytest.raises(DomainError):
            integrate(LE, s("x"), 0)


@settings(max_examples=80)
@given(nonzero_series(keys=range(-2, 3), max_terms=3))
def test_integrate_invariants(a):
    res = integrate(LE, a, 6)
    assert derive(LE, res.antiderivative) + res.residual == a
    assert res.exact == res.residual.is_zero()
    assert all(x > y for x, y in zip(res.trace, res.trace[1:]))


class TestU0:
    def test_values(self):
        assert rosenlicht_u0(LE, mono("x")) == mono("x")
        assert rosenlicht_u0(LE, mono("E_1")) == mono("E_1")

    @settings(max_examples=150)
    @given(monomials(keys=range(-3, 4)))
    def test_invariant(self, alpha):
        assume(not alpha.is_one())
        u0 = rosenlicht_u0(LE, alpha)
        assert not u0.is_one()
        side = alpha if _on_side(alpha) else alpha.inverse()
        q = side / log_derivative_lm(LE, u0)
        assert q.is_one() or u0.leading_fundamental <= q.leading_fundamental


def _on_side(alpha):
    # the construction works with alpha itself when some theta lies below it
    keys = LE.probe_window(16)
    return any(LE.theta(k) < alpha for k in keys)


def test_rational_exponents():
    a = Series.monomial(Monomial({0: Fraction(-3, 2), -1: 2}))
    b = asymptotic_integral(LE, a)
    assert b == Series.monomial(Monomial({0: Fraction(-1, 2), -1: 2}), -2)
