"""Fundamental chains and the finite-support Hahn group over them.

A fundamental monomial is identified by its *key* in the chain: an ``int``
for finite and integer-indexed chains, a ``Fraction`` for rational-indexed
chains.  Keys compare in the chain order, so ``phi < psi`` on keys means
``phi`` is asymptotically smaller than ``psi``.

A :class:`Monomial` is a finitely supported map from keys to non-zero
rational exponents, ordered anti-lexicographically: the comparison of two
monomials is decided by the exponent of the largest fundamental on which
they differ.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

from .errors import DomainError

Key = Union[int, Fraction]
Rational = Union[int, Fraction]


class _One:
    """Value of LF(1): strictly below every fundamental monomial."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "ONE"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("hahnseries.ONE")

    def __reduce__(self):
        return "ONE"


ONE = _One()


def _rat(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------


class FundamentalChain:
    """Common interface of the three chain kinds.

    Subclasses provide naming, membership, optional least element and an
    optional shift endomorphism ``s`` with ``s(phi) < phi`` (a least element
    may be fixed).
    """

    kind: str = "abstract"
    finite: bool = False
    discrete: bool = True

    @property
    def least(self) -> Optional[Key]:
        return None

    @property
    def has_shift(self) -> bool:
        return False

    def contains(self, key: Key) -> bool:
        raise NotImplementedError

    def name(self, key: Key) -> str:
        raise NotImplementedError

    def key(self, name: str) -> Key:
        raise NotImplementedError

    def shift(self, key: Key) -> Key:
        raise DomainError(f"chain {self.kind!r} has no shift endomorphism")

    def check(self, key: Key) -> Key:
        if not self.contains(key):
            raise DomainError(f"{key!r} is not an element of the chain")
        return key

    def below(self, key, depth: int) -> list:
        """Up to ``depth`` chain elements strictly below ``key``, descending."""
        raise DomainError(f"chain {self.kind!r} has no immediate predecessors")

    def span(self, lo: Key, hi: Key) -> list:
        """All chain elements between ``lo`` and ``hi`` inclusive, ascending."""
        raise DomainError(f"chain {self.kind!r} cannot enumerate ranges")

    def anchor(self) -> Key:
        """Base element used for default probe windows and display order."""
        raise NotImplementedError

    def display_key(self, key: Key):
        base = self.anchor()
        return (abs(key - base), key)

    def fundamental(self, name_or_key) -> "Monomial":
        if isinstance(name_or_key, str):
            return Monomial.fundamental(self.key(name_or_key))
        return Monomial.fundamental(self.check(name_or_key))


@dataclass(frozen=True)
class FiniteChain(FundamentalChain):
    """Finitely many fundamentals, listed in ascending order."""

    names: tuple
    shifted: bool = False

    kind = "finite"
    finite = True

    def __post_init__(self):
        if not self.names:
            raise ValueError("a finite chain needs at least one name")
        if len(set(self.names)) != len(self.names):
            raise ValueError("chain names must be unique")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @property
    def least(self) -> int:
        return 0

    @property
    def has_shift(self) -> bool:
        return self.shifted

    def __len__(self) -> int:
        return len(self.names)

    def elements(self) -> list:
        return list(range(len(self.names)))

    def contains(self, key) -> bool:
        return isinstance(key, int) and 0 <= key < len(self.names)

    def name(self, key) -> str:
        return self.names[self.check(key)]

    def key(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DomainError(f"unknown fundamental {name!r}") from None

    def shift(self, key) -> int:
        if not self.shifted:
            return super().shift(key)
        return max(self.check(key) - 1, 0)

    def below(self, key, depth: int) -> list:
        self.check(key)
        return list(range(key - 1, max(key - 1 - depth, -1), -1))

    def span(self, lo, hi) -> list:
        return [k for k in range(len(self.names)) if lo <= k <= hi]

    def anchor(self) -> int:
        return 0

    def display_key(self, key):
        return key


def _compile_pattern(pattern: str, number_re: str) -> tuple:
    if pattern.count("{k}") != 1:
        raise ValueError(f"name pattern {pattern!r} must contain exactly one '{{k}}'")
    prefix, suffix = pattern.split("{k}")
    rx = re.compile(re.escape(prefix) + "(" + number_re + ")" + re.escape(suffix) + r"\Z")
    return prefix, suffix, rx


@dataclass(frozen=True)
class IntegerChain(FundamentalChain):
    """Fundamentals indexed by the integers, optionally bounded below.

    ``aliases`` maps indices to display names used instead of the pattern,
    e.g. ``{0: "x"}`` for the log-exp chain ``E_k = exp^k(x)``.
    """

    pattern: str = "E_{k}"
    aliases: Mapping[int, str] = field(default_factory=dict)
    min_index: Optional[int] = None
    shift_step: Optional[int] = None

    kind = "integer"
    _number_re = r"-?\d+"

    def __post_init__(self):
        object.__setattr__(self, "aliases", dict(self.aliases))
        prefix, suffix, rx = _compile_pattern(self.pattern, self._number_re)
        object.__setattr__(self, "_rx", rx)
        object.__setattr__(self, "_prefix", prefix)
        object.__setattr__(self, "_suffix", suffix)
        rev = {}
        for k, n in self.aliases.items():
            if n in rev:
                raise ValueError(f"duplicate alias {n!r}")
            rev[n] = self._coerce(k)
        object.__setattr__(self, "_alias_keys", rev)
        if self.shift_step is not None and self._coerce(self.shift_step) <= 0:
            raise ValueError("shift step must be positive so that s(phi) < phi")

    def _coerce(self, k) -> Key:
        if isinstance(k, bool) or not isinstance(k, int):
            if isinstance(k, Fraction) and k.denominator == 1:
                return int(k)
            raise DomainError(f"{k!r} is not an integer index")
        return k

    def _format_index(self, k) -> str:
        return str(k)

    def _parse_index(self, text: str) -> Key:
        return int(text)

    @property
    def least(self):
        return self.min_index

    @property
    def has_shift(self) -> bool:
        return self.shift_step is not None

    def contains(self, key) -> bool:
        try:
            key = self._coerce(key)
        except DomainError:
            return False
        return self.min_index is None or key >= self.min_index

    def name(self, key) -> str:
        self.check(key)
        alias = self.aliases.get(key)
        if alias is not None:
            return alias
        return self._prefix + self._format_index(key) + self._suffix

    def key(self, name: str) -> Key:
        if name in self._alias_keys:
            return self.check(self._alias_keys[name])
        m = self._rx.match(name)
        if not m:
            raise DomainError(f"unknown fundamental {name!r}")
        return self.check(self._parse_index(m.group(1)))

    def shift(self, key):
        if self.shift_step is None:
            return super().shift(key)
        key = self.check(key)
        s = key - self.shift_step
        if self.min_index is not None and s < self.min_index:
            s = self.min_index
        return s

    def below(self, key, depth: int) -> list:
        key = self.check(key)
        out = []
        k = key - 1
        while len(out) < depth and self.contains(k):
            out.append(k)
            k -= 1
        return out

    def span(self, lo, hi) -> list:
        lo, hi = self._coerce(lo), self._coerce(hi)
        if self.min_index is not None:
            lo = max(lo, self.min_index)
        return list(range(lo, hi + 1))

    def anchor(self):
        if self.min_index is not None and self.min_index > 0:
            return self.min_index
        return 0


@dataclass(frozen=True)
class RationalChain(IntegerChain):
    """Fundamentals indexed by the rationals (a dense chain)."""

    pattern: str = "phi_{k}"
    min_index: Optional[Fraction] = None
    shift_step: Optional[Fraction] = None

    kind = "rational"
    discrete = False
    _number_re = r"-?\d+(?:/\d+)?"

    def _coerce(self, k) -> Key:
        if isinstance(k, bool):
            raise DomainError(f"{k!r} is not a rational index")
        if isinstance(k, int):
            return k
        if isinstance(k, Fraction):
            return k.numerator if k.denominator == 1 else k
        raise DomainError(f"{k!r} is not a rational index")

    def _format_index(self, k) -> str:
        return format_rational(Fraction(k))

    def _parse_index(self, text: str) -> Key:
        return self._coerce(Fraction(text))

    def below(self, key, depth: int) -> list:
        return FundamentalChain.below(self, key, depth)

    def span(self, lo, hi) -> list:
        return FundamentalChain.span(self, lo, hi)


def log_exp_chain() -> IntegerChain:
    """The chain ``E_k = exp^k(x)``, ``k`` in Z, with ``E_0`` shown as ``x``."""
    return IntegerChain(pattern="E_{k}", aliases={0: "x"})


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------


class Monomial:
    """Element of H_fin(Phi): ``prod phi^{e_phi}`` with finitely many e_phi != 0.

    Instances are immutable and hashable.  The rich comparison operators
    implement the anti-lexicographic group order, so ``alpha < beta`` reads
    ``alpha`` is dominated by ``beta``.
    """

    __slots__ = ("_exps", "_hash")

    def __init__(self, exponents: Optional[Mapping[Key, Rational]] = None):
        items = []
        if exponents:
            for k, e in exponents.items():
                e = _rat(e)
                if e:
                    items.append((k, e))
        items.sort(key=lambda kv: kv[0], reverse=True)
        self._exps = tuple(items)
        self._hash = None

    @classmethod
    def _from_sorted(cls, items: tuple) -> "Monomial":
        m = cls.__new__(cls)
        m._exps = items
        m._hash = None
        return m

    @classmethod
    def fundamental(cls, key: Key, exponent: Rational = 1) -> "Monomial":
        return cls({key: exponent})

    # -- inspection ---------------------------------------------------------

    @property
    def exponents(self) -> dict:
        return dict(self._exps)

    @property
    def support(self) -> tuple:
        """Keys with non-zero exponent, in decreasing chain order."""
        return tuple(k for k, _ in self._exps)

    def items(self) -> Iterator[tuple]:
        return iter(self._exps)

    def exponent(self, key: Key) -> Fraction:
        for k, e in self._exps:
            if k == key:
                return e
        return Fraction(0)

    __getitem__ = exponent

    def is_one(self) -> bool:
        return not self._exps

    def __len__(self) -> int:
        return len(self._exps)

    # -- group structure ----------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._exps:
            return self
        if not self._exps:
            return other
        acc = dict(self._exps)
        for k, e in other._exps:
            s = acc.get(k, 0) + e
            if s:
                acc[k] = s
            else:
                del acc[k]
        return Monomial._from_sorted(tuple(sorted(acc.items(), key=lambda kv: kv[0], reverse=True)))

    def __pow__(self, r: Rational) -> "Monomial":
        r = _rat(r)
        if r == 0:
            return ONE_MONOMIAL
        return Monomial._from_sorted(tuple((k, e * r) for k, e in self._exps))

    def inverse(self) -> "Monomial":
        return Monomial._from_sorted(tuple((k, -e) for k, e in self._exps))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return self * other.inverse()

    # -- valuation data ---------------------------------------------------------

    @property
    def leading_fundamental(self):
        """LF: the largest key of the support, or ``ONE`` for the identity."""
        return self._exps[0][0] if self._exps else ONE

    @property
    def leading_exponent(self) -> Fraction:
        if not self._exps:
            raise DomainError("LE is undefined for the identity monomial")
        return self._exps[0][1]

    # -- order ------------------------------------------------------------------

    def compare(self, other: "Monomial") -> int:
        return compare(self, other)

    def __eq__(self, other):
        if isinstance(other, Monomial):
            return self._exps == other._exps
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._exps)
        return self._hash

    def __lt__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return compare(self, other) < 0

    def __le__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return compare(self, other) <= 0

    def __gt__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return compare(self, other) > 0

    def __ge__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return compare(self, other) >= 0

    def __repr__(self) -> str:
        if not self._exps:
            return "Monomial()"
        inner = ", ".join(f"{k!r}: {format_rational(e)}" for k, e in self._exps)
        return "Monomial({" + inner + "})"


ONE_MONOMIAL = Monomial()


def compare(alpha: Monomial, beta: Monomial) -> int:
    """Anti-lexicographic comparison: -1, 0 or 1.

    Equivalent to the sign of LE(beta/alpha), computed without forming the
    quotient.
    """
    a, b = alpha._exps, beta._exps
    i = j = 0
    na, nb = len(a), len(b)
    while i < na or j < nb:
        if j >= nb or (i < na and a[i][0] > b[j][0]):
            ea, eb = a[i][1], 0
            i += 1
        elif i >= na or b[j][0] > a[i][0]:
            ea, eb = 0, b[j][1]
            j += 1
        else:
            ea, eb = a[i][1], b[j][1]
            i += 1
            j += 1
        if ea != eb:
            return -1 if ea < eb else 1
    return 0


def mul(alpha: Monomial, beta: Monomial) -> Monomial:
    return alpha * beta


def pow_scalar(alpha: Monomial, r: Rational) -> Monomial:
    return alpha ** r


def leading_fundamental(alpha: Monomial):
    return alpha.leading_fundamental


def leading_exponent(alpha: Monomial) -> Fraction:
    return alpha.leading_exponent


def abs_sign(alpha: Monomial) -> tuple:
    """``(|alpha|, sign)`` with ``|alpha| = max(alpha, 1/alpha)``; sign(1) is +1."""
    if alpha.is_one() or alpha.leading_exponent > 0:
        return alpha, 1
    return alpha.inverse(), -1


def sign(alpha: Monomial) -> int:
    return abs_sign(alpha)[1]


def lf_max(*values):
    """Maximum of LF values where ``ONE`` sits below every key."""
    best = ONE
    for v in values:
        if v is ONE:
            continue
        if best is ONE or v > best:
            best = v
    return best
