from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hahnseries import ONE, DomainError, FiniteChain, IntegerChain, Monomial, RationalChain, log_exp_chain
from hahnseries.monomial import abs_sign, compare, leading_exponent, leading_fundamental, lf_max, mul, pow_scalar
from oracles import naive_compare, naive_mul
from strategies import monomials, nonzero_rationals, rationals

# log-exp keys: x is 0, log x is -1, e^x is 1
X, LOG, EXP = 0, -1, 1


def m(**kw):
    names = {"x": X, "log": LOG, "exp": EXP}
    return Monomial({names[k]: Fraction(v) for k, v in kw.items()})


class TestWorkedValues:
    def test_mul_examples(self):
        assert mul(m(x=2), m(x=-2)).is_one()
        assert mul(m(x=2), m(log=3)) == m(x=2, log=3)
        assert mul(m(x=1, exp=1), m(x=-1, exp=1)) == m(exp=2)

    def test_pow_scalar_examples(self):
        assert pow_scalar(m(x=2), Fraction(1, 2)) == m(x=1)
        assert pow_scalar(m(x=3, log=-7), 0).is_one()
        assert pow_scalar(m(x=2, log=-4), 3) == m(x=6, log=-12)

    def test_leading_fundamental_examples(self):
        assert leading_fundamental(m(x=2, log=-3)) == X
        assert leading_fundamental(Monomial()) is ONE
        assert leading_fundamental(m(x=-1, exp=1)) == EXP

    def test_leading_exponent_examples(self):
        assert leading_exponent(m(x=2, log=-3)) == 2
        assert leading_exponent(m(x=-1, exp=1)) == 1
        assert leading_exponent(pow_scalar(m(x=3), Fraction(2, 3))) == 2
        with pytest.raises(DomainError):
            leading_exponent(Monomial())

    def test_compare_examples(self):
        assert compare(m(x=100), m(x=-1, exp=1)) == -1
        assert compare(m(x=1), m(x=1)) == 0
        assert compare(m(log=1), m(x=Fraction(1, 1000))) == -1

    def test_abs_sign_examples(self):
        assert abs_sign(m(x=-2)) == (m(x=2), -1)
        assert abs_sign(m(exp=1)) == (m(exp=1), 1)
        assert abs_sign(Monomial()) == (Monomial(), 1)


class TestInvariants:
    def test_zero_exponents_dropped(self):
        assert Monomial({0: 0, 1: 2}).support == (1,)
        assert Monomial({3: 0}).is_one()

    def test_one_is_below_every_key(self):
        assert ONE < -10**9 and not ONE > 5 and lf_max(ONE, -3, 2) == 2


@given(monomials(), monomials())
def test_compare_matches_reference(a, b):
    assert compare(a, b) == naive_compare(a.exponents, b.exponents)


@given(monomials(), monomials())
def test_mul_matches_reference(a, b):
    assert (a * b).exponents == naive_mul(a.exponents, b.exponents)


@given(monomials(), monomials(), monomials())
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * a.inverse()).is_one()


@given(monomials(), monomials(), monomials())
def test_order_compatible_with_product(a, b, c):
    if a < b:
        assert a * c < b * c


@given(monomials(), nonzero_rationals)
def test_pow_scalar_keeps_leading_fundamental(g, r):
    if not g.is_one():
        p = pow_scalar(g, r)
        assert p.leading_fundamental == g.leading_fundamental
        assert p.leading_exponent == r * g.leading_exponent


@given(monomials())
def test_above_one_iff_positive_leading_exponent(g):
    if not g.is_one():
        assert (g > Monomial()) == (g.leading_exponent > 0)


@given(monomials(), monomials())
def test_lf_ultrametric(a, b):
    lf = (a * b).leading_fundamental
    top = lf_max(a.leading_fundamental, b.leading_fundamental)
    assert lf <= top
    if a.leading_fundamental != b.leading_fundamental:
        assert lf == top


@given(st.sampled_from([log_exp_chain(), IntegerChain("phi_{k}", min_index=-3)]), st.integers(-3, 40))
def test_integer_chain_names_round_trip(chain, k):
    assert chain.key(chain.name(k)) == k


def test_finite_chain():
    c = FiniteChain(("a", "b", "c"), shifted=True)
    assert [c.name(k) for k in c.elements()] == ["a", "b", "c"]
    assert c.shift(2) == 1 and c.shift(0) == 0
    with pytest.raises(ValueError):
        FiniteChain(("a", "a"))
    with pytest.raises(DomainError):
        c.key("d")


@given(rationals)
def test_rational_chain_names_round_trip(q):
    c = RationalChain()
    assert c.key(c.name(q)) == q
