"""Exact arithmetic on finitely supported generalised series.

A :class:`Series` is a finite sum ``sum c_i * m_i`` with rational
coefficients and monomials from :mod:`hahnseries.monomial`.  Terms are kept
in strictly decreasing monomial order with no zero coefficients, so
structural equality is mathematical equality.

Two orders live on series and are kept apart on purpose:

* the field order (``<``, ``<=``, ...), where ``a > 0`` iff ``LC(a) > 0``;
* the dominance relation, exposed through :func:`dominance`, which compares
  leading monomials only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, DomainError
from .monomial import ONE_MONOMIAL, Monomial, _rat

Scalar = Union[int, Fraction]


class Series:
    """Immutable finitely supported series.

    ``terms`` is a tuple of ``(coefficient, monomial)`` pairs with strictly
    decreasing monomials.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Iterable, Mapping, None] = None):
        acc: dict = {}
        if terms:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for first, second in pairs:
                # accept (coeff, monomial) and (monomial, coeff)
                if isinstance(first, Monomial):
                    m, c = first, second
                else:
                    c, m = first, second
                c = _rat(c)
                if c:
                    acc[m] = acc.get(m, 0) + c
        self._terms = _normalise(acc)
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: tuple) -> "Series":
        s = cls.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def constant(cls, c: Scalar) -> "Series":
        c = _rat(c)
        return cls._from_terms(((c, ONE_MONOMIAL),) if c else ())

    @classmethod
    def monomial(cls, m: Monomial, c: Scalar = 1) -> "Series":
        c = _rat(c)
        return cls._from_terms(((c, m),) if c else ())

    @classmethod
    def coerce(cls, value) -> "Series":
        if isinstance(value, Series):
            return value
        if isinstance(value, Monomial):
            return cls.monomial(value)
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls.constant(value)
        raise TypeError(f"cannot interpret {type(value).__name__} as a series")

    # -- inspection -------------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def support(self) -> tuple:
        return tuple(m for _, m in self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        for c, mm in self._terms:
            if mm == m:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][1].is_one())

    def is_monomial_term(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise DomainError("the zero series has no leading monomial")
        return self._terms[0][1]

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            raise DomainError("the zero series has no leading coefficient")
        return self._terms[0][0]

    @property
    def leading_term(self) -> "Series":
        if not self._terms:
            raise DomainError("the zero series has no leading term")
        return Series._from_terms(self._terms[:1])

    def sign(self) -> int:
        if not self._terms:
            return 0
        return 1 if self._terms[0][0] > 0 else -1

    # -- ring operations --------------------------------------------------------

    def __neg__(self) -> "Series":
        return Series._from_terms(tuple((-c, m) for c, m in self._terms))

    def __pos__(self) -> "Series":
        return self

    def __add__(self, other) -> "Series":
        try:
            other = Series.coerce(other)
        except TypeError:
            return NotImplemented
        return _merge(self._terms, other._terms, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        try:
            other = Series.coerce(other)
        except TypeError:
            return NotImplemented
        return _merge(self._terms, other._terms, -1)

    def __rsub__(self, other) -> "Series":
        try:
            other = Series.coerce(other)
        except TypeError:
            return NotImplemented
        return _merge(other._terms, self._terms, -1)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.shift(other)
        if not isinstance(other, Series):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1:
            c, m = other._terms[0]
            return self.shift(m).scale(c)
        if len(self._terms) == 1:
            c, m = self._terms[0]
            return other.shift(m).scale(c)
        acc: dict = {}
        for ca, ma in self._terms:
            for cb, mb in other._terms:
                m = ma * mb
                acc[m] = acc.get(m, 0) + ca * cb
        return Series._from_terms(_normalise(acc))

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Series":
        c = _rat(c)
        if not c:
            return ZERO
        return Series._from_terms(tuple((c * a, m) for a, m in self._terms))

    def shift(self, m: Monomial) -> "Series":
        """Multiply by a monomial; order of terms is preserved."""
        if m.is_one():
            return self
        return Series._from_terms(tuple((c, mm * m) for c, mm in self._terms))

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise DivisionByZero("division by zero")
            return self.scale(1 / _rat(other))
        if isinstance(other, Monomial):
            return self.shift(other.inverse())
        if isinstance(other, Series):
            if other.is_zero():
                raise DivisionByZero("division by the zero series")
            if len(other._terms) != 1:
                raise DomainError("exact division needs a single-term divisor; use invert() with a budget")
            c, m = other._terms[0]
            return self.shift(m.inverse()).scale(1 / c)
        return NotImplemented

    def __pow__(self, n: int) -> "Series":
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise DomainError("negative powers need a single-term base")
            c, m = self._terms[0]
            return Series.monomial(m ** n, Fraction(c) ** n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- equality and the field order --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Series):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, Monomial)) and not isinstance(other, bool):
            return self._terms == Series.coerce(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def _cmp(self, other) -> int:
        return (self - Series.coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self) -> "Series":
        return -self if self.sign() < 0 else self

    def __repr__(self) -> str:
        if not self._terms:
            return "Series(0)"
        return "Series(" + ", ".join(f"({c}, {m!r})" for c, m in self._terms) + ")"


def _normalise(acc: dict) -> tuple:
    items = [(c, m) for m, c in acc.items() if c]
    items.sort(key=lambda cm: cm[1], reverse=True)
    return tuple(items)


def _merge(a: tuple, b: tuple, sgn: int) -> Series:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ca, ma = a[i]
        cb, mb = b[j]
        r = ma.compare(mb)
        if r > 0:
            out.append((ca, ma))
            i += 1
        elif r < 0:
            out.append((sgn * cb, mb))
            j += 1
        else:
            c = ca + sgn * cb
            if c:
                out.append((c, ma))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend((sgn * c, m) for c, m in b[j:])
    return Series._from_terms(tuple(out))


ZERO = Series()
ONE = Series.constant(1)


# ---------------------------------------------------------------------------
# Functional surface
# ---------------------------------------------------------------------------


def add(a: Series, b: Series) -> Series:
    return a + b


def neg(a: Series) -> Series:
    return -a


def mul(a: Series, b: Series) -> Series:
    return a * b


def leading_data(a: Series) -> tuple:
    """``(LM, LC, LT)`` of a non-zero series."""
    if a.is_zero():
        raise DomainError("leading data of the zero series is undefined")
    return a.leading_monomial, a.leading_coefficient, a.leading_term


def dominance(a: Series, b: Series) -> int:
    """-1, 0 or 1 as ``a`` is dominated by, asymptotic to, or dominates ``b``.

    LM(0) sits below every monomial, so two zero series are asymptotic.
    """
    if a.is_zero() or b.is_zero():
        return (not a.is_zero()) - (not b.is_zero())
    return a.leading_monomial.compare(b.leading_monomial)


def preceq(a: Series, b: Series) -> bool:
    return dominance(a, b) <= 0


def asymptotic(a: Series, b: Series) -> bool:
    return dominance(a, b) == 0


def equivalent(a: Series, b: Series) -> bool:
    """``a ~ b``: equal leading terms."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.terms[0] == b.terms[0]


@dataclass(frozen=True)
class SeriesDecomposition:
    infinite_part: Series
    constant_part: Fraction
    infinitesimal_part: Series

    def recompose(self) -> Series:
        return self.infinite_part + self.constant_part + self.infinitesimal_part


def decompose(a: Series) -> SeriesDecomposition:
    """Split into purely infinite, constant and infinitesimal parts."""
    inf, small = [], []
    const = Fraction(0)
    for c, m in a.terms:
        r = m.compare(ONE_MONOMIAL)
        if r > 0:
            inf.append((c, m))
        elif r < 0:
            small.append((c, m))
        else:
            const = c
    return SeriesDecomposition(Series._from_terms(tuple(inf)), const, Series._from_terms(tuple(small)))


def truncate(a: Series, n: int) -> Series:
    """The ``n`` leading terms of ``a``."""
    return Series._from_terms(a.terms[: max(n, 0)])


def invert(a: Series, budget: int) -> Series:
    """The ``budget`` leading terms of ``1/a``.

    Writes ``a = c*m*(1 + eps)`` with ``eps`` infinitesimal and sums the
    geometric series in ``-eps``.  After ``k`` powers the terms strictly above
    ``LM(eps)**(k+1)`` are final, so powers are added until ``budget`` final
    terms are available.  A single-term ``a`` is inverted exactly.
    """
    if a.is_zero():
        raise DivisionByZero("cannot invert the zero series")
    if budget < 1:
        raise DomainError("inversion budget must be at least 1")
    c, m = a.leading_coefficient, a.leading_monomial
    scale = 1 / c
    minv = m.inverse()
    if len(a) == 1:
        return Series.monomial(minv, scale)
    eps = a.shift(minv).scale(scale) - ONE
    step = -eps
    e1 = eps.leading_monomial
    total = ONE
    power = ONE
    k = 0
    while True:
        bound = e1 ** (k + 1)
        settled = [t for t in total.terms if t[1] > bound]
        if len(settled) >= budget:
            break
        k += 1
        power = power * step
        total = total + power
    return Series._from_terms(tuple(settled[:budget])).shift(minv).scale(scale)
