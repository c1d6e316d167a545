"""Hardy-type checks: constants, l'Hospital, log-derivative compatibility, H-field sign.

The per-pair verifiers are exact.  Universal statements are sampled with a
seeded generator over a window of fundamentals.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .derivation import ConditionReport, DerivationSchema, Verdict, check_h3prime, derive
from .errors import DomainError
from .monomial import ONE_MONOMIAL, Monomial
from .sampling import random_series
from .series import Series, dominance

__all__ = [
    "check_h3prime", "verify_lhospital", "verify_log_compat", "check_hfield", "check_constants",
    "HFieldResult", "Sample", "HardyReport", "hardy_report", "sample_lhospital", "sample_log_compat",
    "refute_witness", "comparable",
]


def _nonzero(a: Series, label: str) -> Series:
    a = Series.coerce(a)
    if a.is_zero():
        raise DomainError(f"{label} must be non-zero")
    return a


def verify_lhospital(schema: DerivationSchema, a, b) -> bool:
    """Whether ``a <= b`` (dominance) iff ``a' <= b'`` for this pair."""
    a, b = _nonzero(a, "a"), _nonzero(b, "b")
    if a.leading_monomial.is_one() or b.leading_monomial.is_one():
        raise DomainError("l'Hospital pairs must not be asymptotic to 1")
    lhs = dominance(a, b) <= 0
    rhs = dominance(derive(schema, a), derive(schema, b)) <= 0
    return lhs == rhs


def _abs_lm(a: Series) -> Monomial:
    m = a.leading_monomial
    return m if m >= ONE_MONOMIAL else m.inverse()


def comparable(a, b) -> bool:
    """Same leading fundamental of the absolute leading monomials."""
    return _abs_lm(Series.coerce(a)).leading_fundamental == _abs_lm(Series.coerce(b)).leading_fundamental


def _log_derivative_lt(schema: DerivationSchema, a: Series) -> Series:
    # only the leading term of a'/a is needed, and LT(a'/a) = LT(a')/LT(a)
    da = derive(schema, a)
    if da.is_zero():
        return da
    return da.leading_term / a.leading_term


def verify_log_compat(schema: DerivationSchema, a, b) -> bool:
    """For ``|a| > |b| > 1``: ``a'/a >= b'/b``, with ``≍`` exactly when ``a`` and ``b`` are comparable."""
    a, b = _nonzero(a, "a"), _nonzero(b, "b")
    ma, mb = _abs_lm(a), _abs_lm(b)
    if not (ma > mb and mb > ONE_MONOMIAL):
        raise DomainError("log-derivative compatibility needs |a| > |b| > 1")
    la, lb = _log_derivative_lt(schema, a), _log_derivative_lt(schema, b)
    d = dominance(la, lb)
    return d >= 0 and ((d == 0) == comparable(a, b))


@dataclass(frozen=True)
class HFieldResult:
    yes: bool
    witness: Optional[object] = None

    def __bool__(self) -> bool:
        return self.yes


def check_hfield(schema: DerivationSchema, window: Optional[Sequence] = None, probe: int = 8) -> HFieldResult:
    """``Yes`` iff every ``phi'/phi`` in the window has a positive leading coefficient."""
    keys = schema.probe_window(probe) if window is None else list(window)
    for k in keys:
        if schema.leading_coefficient(k) <= 0:
            return HFieldResult(False, k)
    return HFieldResult(True)


def check_constants(schema: DerivationSchema, a) -> bool:
    """``a' = 0`` exactly when ``a`` is a constant."""
    a = Series.coerce(a)
    return derive(schema, a).is_zero() == a.is_constant()


@dataclass(frozen=True)
class Sample:
    a: Series
    b: Series
    ok: bool
    kind: str = ""


def _valid_lhospital(a: Series, b: Series) -> bool:
    return not a.is_zero() and not b.is_zero() and not a.leading_monomial.is_one() \
        and not b.leading_monomial.is_one()


def _valid_log_compat(a: Series, b: Series) -> bool:
    if a.is_zero() or b.is_zero():
        return False
    ma, mb = _abs_lm(a), _abs_lm(b)
    return ma > mb > ONE_MONOMIAL


def sample_lhospital(schema: DerivationSchema, keys: Sequence, count: int, seed=0, **shape) -> list:
    """``count`` valid random pairs checked with :func:`verify_lhospital`."""
    r = random.Random(seed)
    out = []
    while len(out) < count:
        a = random_series(r, keys, allow_zero=False, **shape)
        b = random_series(r, keys, allow_zero=False, **shape)
        if _valid_lhospital(a, b):
            out.append(Sample(a, b, verify_lhospital(schema, a, b), "lhospital"))
    return out


def sample_log_compat(schema: DerivationSchema, keys: Sequence, count: int, seed=0, **shape) -> list:
    """``count`` valid random pairs checked with :func:`verify_log_compat` (pairs are ordered to be valid)."""
    r = random.Random(seed)
    out = []
    while len(out) < count:
        a = random_series(r, keys, allow_zero=False, **shape)
        b = random_series(r, keys, allow_zero=False, **shape)
        if _valid_log_compat(b, a):
            a, b = b, a
        if _valid_log_compat(a, b):
            out.append(Sample(a, b, verify_log_compat(schema, a, b), "logcompat"))
    return out


_POW_R = (Fraction(-1), Fraction(-2), Fraction(-1, 2))
_POW_S = (Fraction(1), Fraction(-1), Fraction(2))


def refute_witness(schema: DerivationSchema, phi, psi) -> list:
    """Monomial pairs built from ``phi < psi`` on which l'Hospital or compatibility fails.

    Tries ``(psi^r, phi^s)`` for ``r < 0``: these satisfy ``psi^r < phi^s``, so a
    derivative comparison going the other way breaks l'Hospital.  Also tries the
    compatibility pair ``(psi, phi)``.
    """
    fails = []
    for r in _POW_R:
        for s in _POW_S:
            a = Series.monomial(Monomial.fundamental(psi, r))
            b = Series.monomial(Monomial.fundamental(phi, s))
            if not verify_lhospital(schema, a, b):
                fails.append(Sample(a, b, False, "lhospital"))
    for p, q in ((psi, phi),):
        a = Series.monomial(Monomial.fundamental(p))
        b = Series.monomial(Monomial.fundamental(q))
        if not verify_log_compat(schema, a, b):
            fails.append(Sample(a, b, False, "logcompat"))
    return fails


@dataclass(frozen=True)
class HardyReport:
    h3prime: ConditionReport
    lhospital_samples: tuple = ()
    logcompat_samples: tuple = ()
    hfield: HFieldResult = field(default_factory=lambda: HFieldResult(True))
    refutations: tuple = ()

    @property
    def hardy(self) -> bool:
        return self.h3prime.verdict is Verdict.HOLDS and all(s.ok for s in self.lhospital_samples) \
            and all(s.ok for s in self.logcompat_samples)


def hardy_report(schema: DerivationSchema, window: Sequence, samples: int = 200, seed=0) -> HardyReport:
    """Run the criterion scan, both samplers and the H-field sign check over one window."""
    h3 = check_h3prime(schema, window)
    keys = list(h3.window)
    lh = sample_lhospital(schema, keys, samples, seed)
    lc = sample_log_compat(schema, keys, samples, seed + 1 if isinstance(seed, int) else seed)
    refs = ()
    if h3.witness is not None:
        refs = tuple(refute_witness(schema, *h3.witness.phis))
    return HardyReport(h3, tuple(lh), tuple(lc), check_hfield(schema, keys), refs)
