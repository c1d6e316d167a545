"""Derivation schemas, their extension to series, and window checkers.

A schema fixes the logarithmic derivative ``phi'/phi`` of every fundamental.
The derivation of a monomial follows by the strong Leibniz rule and the
derivation of a series by strong linearity; with finite supports both sums
are finite.

The extension criteria quantify over infinite sequences of fundamentals, so
they are checked on finite windows.  A window scan is exact on finite
chains; on infinite chains a verdict is relative to the window and
:attr:`Verdict.UNKNOWN` is returned when the sample cannot decide.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .errors import DomainError, SchemaDomainError, WindowError
from .monomial import (
    ONE,
    FundamentalChain,
    IntegerChain,
    Monomial,
    _rat,
    log_exp_chain,
)
from .series import ZERO, Series, _normalise


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------


class DerivationSchema:
    """Assigns the logarithmic derivative ``phi'/phi`` to each fundamental.

    Subclasses implement :meth:`_compute`.  Results are cached per key, and
    monomial derivatives are cached per monomial.
    """

    kind = "abstract"
    #: every ``phi'/phi`` is a single term
    monomial = False

    def __init__(self, chain: FundamentalChain):
        self.chain = chain
        self._cache: dict = {}
        self._mono_cache: dict = {}

    def _compute(self, key) -> Series:
        raise NotImplementedError

    def log_derivative(self, key) -> Series:
        try:
            return self._cache[key]
        except KeyError:
            pass
        if not self.chain.contains(key):
            raise SchemaDomainError(f"{key!r} is not an element of the chain")
        value = self._compute(key)
        if value.is_zero():
            raise SchemaDomainError(f"schema gives a zero logarithmic derivative at {self.chain.name(key)}")
        self._cache[key] = value
        return value

    def theta(self, key) -> Monomial:
        """``LM(phi'/phi)``."""
        return self.log_derivative(key).leading_monomial

    def leading_coefficient(self, key) -> Fraction:
        """``LC(phi'/phi)``."""
        return self.log_derivative(key).leading_coefficient

    def support(self, key) -> tuple:
        """Support of ``phi'/phi``, decreasing."""
        return self.log_derivative(key).support

    def domain(self) -> Optional[list]:
        """All keys where the schema is defined, or ``None`` if unbounded."""
        if self.chain.finite:
            return self.chain.elements()
        return None

    def window(self, lo, hi) -> list:
        """Ascending keys of the chain between ``lo`` and ``hi`` inclusive."""
        dom = self.domain()
        if dom is not None:
            return [k for k in dom if lo <= k <= hi]
        if self.chain.discrete:
            return self.chain.span(lo, hi)
        return [k for k in range(math.ceil(lo), math.floor(hi) + 1) if self.chain.contains(k)]

    def probe_window(self, depth: int) -> list:
        """The default sample: the whole domain if finite, else ``depth`` keys either side of the anchor."""
        dom = self.domain()
        if dom is not None:
            return list(dom)
        a = self.chain.anchor()
        return self.window(a - depth, a + depth)

    def describe(self) -> str:
        return self.kind

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.describe()}>"


class ExplicitTable(DerivationSchema):
    """``phi'/phi`` given explicitly for finitely many fundamentals."""

    kind = "table"

    def __init__(self, chain: FundamentalChain, table: Mapping):
        super().__init__(chain)
        self.table = {}
        for k, v in table.items():
            k = chain.key(k) if isinstance(k, str) else chain.check(k)
            v = Series.coerce(v)
            if v.is_zero():
                raise SchemaDomainError(f"zero logarithmic derivative for {chain.name(k)}")
            self.table[k] = v
        self.monomial = all(len(v) == 1 for v in self.table.values())

    def _compute(self, key) -> Series:
        try:
            return self.table[key]
        except KeyError:
            raise SchemaDomainError(f"{self.chain.name(key)} is outside the table") from None

    def domain(self) -> list:
        return sorted(self.table)


class LogExpChain(DerivationSchema):
    """``E_n = exp^n(x)``: ``E_n'/E_n`` is ``E_1...E_{n-1}`` for ``n >= 1`` and
    ``1/(E_n...E_0)`` for ``n <= 0``."""

    kind = "logexp"
    monomial = True

    def __init__(self, chain: Optional[IntegerChain] = None):
        super().__init__(chain if chain is not None else log_exp_chain())

    def _compute(self, n) -> Series:
        if n >= 1:
            exps = {k: 1 for k in range(1, n)}
        else:
            exps = {k: -1 for k in range(n, 1)}
        return Series.monomial(Monomial(exps))


class ShiftMonomial(DerivationSchema):
    """``phi'/phi = t * prod_{n=1..N} s^n(phi)^{a_n}``, and ``t`` at a least element.

    ``exponents`` lists ``a_1, ..., a_N`` with ``a_1 > 0``.  An infinite
    product is requested with ``repeat=True``: the last exponent is repeated
    and the product is cut after ``cap`` factors.
    """

    kind = "shift"
    monomial = True

    def __init__(self, chain: FundamentalChain, exponents: Sequence = (1,), t=1,
                 repeat: bool = False, cap: int = 8):
        super().__init__(chain)
        if not chain.has_shift:
            raise SchemaDomainError("a shift schema needs a chain with a shift endomorphism")
        self.exponents = tuple(_rat(e) for e in exponents)
        if not self.exponents or self.exponents[0] <= 0:
            raise SchemaDomainError("the first shift exponent must be positive")
        self.t = _rat(t)
        if not self.t:
            raise SchemaDomainError("t must be non-zero")
        self.repeat = repeat
        self.cap = cap
        if repeat and cap < len(self.exponents):
            raise SchemaDomainError("cap must cover the listed exponents")

    def _factors(self) -> tuple:
        if not self.repeat:
            return self.exponents
        return self.exponents + (self.exponents[-1],) * (self.cap - len(self.exponents))

    def _compute(self, key) -> Series:
        least = self.chain.least
        if least is not None and key == least:
            return Series.constant(self.t)
        exps: dict = {}
        k = key
        for e in self._factors():
            k = self.chain.shift(k)
            exps[k] = exps.get(k, 0) + e
        return Series.monomial(Monomial(exps), self.t)

    def describe(self) -> str:
        tail = f" repeated up to {self.cap}" if self.repeat else ""
        return f"shift exponents={[str(e) for e in self.exponents]}{tail} t={self.t}"


class RealIndexedPower(DerivationSchema):
    """``theta(phi) = phi_m^{f(phi)+beta}`` over a chain with least element ``phi_m``.

    ``f`` is the chain index.  With ``t="index"`` the coefficient of
    ``phi'/phi`` is the index itself (1 at ``phi_m`` when its index is 0), as
    for ``phi_a = exp(x^a)``; otherwise ``t`` is a fixed non-zero rational.
    """

    kind = "power"
    monomial = True

    def __init__(self, chain: FundamentalChain, beta=-1, t="index"):
        super().__init__(chain)
        if chain.least is None:
            raise SchemaDomainError("a power schema needs a chain with a least element")
        self.beta = _rat(beta)
        if t != "index":
            t = _rat(t)
            if not t:
                raise SchemaDomainError("t must be non-zero")
        self.t = t

    def _coefficient(self, key) -> Fraction:
        if self.t != "index":
            return self.t
        f = Fraction(key)
        return f if f else Fraction(1)

    def _compute(self, key) -> Series:
        m = Monomial.fundamental(self.chain.least, Fraction(key) + self.beta)
        return Series.monomial(m, self._coefficient(key))

    def describe(self) -> str:
        return f"power beta={self.beta} t={self.t}"


class GeneralShift(DerivationSchema):
    """``phi'/phi = gamma * sum_tau t_tau prod_n s^{n+1}(phi)^{tau_n}`` for finitely many ``tau``.

    Each ``tau`` is a tuple of exponents whose first non-zero entry is
    positive, so that the sum is purely infinite in the shifted variables.
    """

    kind = "general"

    def __init__(self, chain: FundamentalChain, gamma: Monomial, terms: Sequence):
        super().__init__(chain)
        if not chain.has_shift:
            raise SchemaDomainError("a general shift schema needs a shift endomorphism")
        if chain.least is not None:
            raise SchemaDomainError("a general shift schema needs a chain without least element")
        self.gamma = gamma
        norm = []
        for t, tau in terms:
            t = _rat(t)
            tau = tuple(_rat(e) for e in tau)
            lead = next((e for e in tau if e), None)
            if not t or lead is None or lead < 0:
                raise SchemaDomainError(f"invalid term {t}, {tau}: need t != 0 and a positive first exponent")
            norm.append((t, tau))
        if not norm:
            raise SchemaDomainError("a general shift schema needs at least one term")
        taus = [tau for _, tau in norm]
        if len(set(_strip(tau) for tau in taus)) != len(taus):
            raise SchemaDomainError("duplicate exponent tuples")
        self.terms = tuple(norm)
        self.monomial = len(norm) == 1

    def _compute(self, key) -> Series:
        out = []
        for t, tau in self.terms:
            exps: dict = {}
            k = key
            for e in tau:
                k = self.chain.shift(k)
                if e:
                    exps[k] = exps.get(k, 0) + e
            out.append((t, self.gamma * Monomial(exps)))
        return Series(out)

    def describe(self) -> str:
        return f"general gamma={self.gamma!r} terms={len(self.terms)}"


def _strip(tau: tuple) -> tuple:
    tau = list(tau)
    while tau and not tau[-1]:
        tau.pop()
    return tuple(tau)


class IndexOffset(DerivationSchema):
    """``phi_k'/phi_k = t * phi_{k+offset}^e`` on an integer chain.

    With a positive offset this violates the Hardy-type criterion and is
    useful as a failing fixture.
    """

    kind = "offset"
    monomial = True

    def __init__(self, chain: IntegerChain, offset: int = 1, exponent=1, t=1):
        super().__init__(chain)
        self.offset = int(offset)
        self.exponent = _rat(exponent)
        self.t = _rat(t)
        if not self.exponent or not self.t:
            raise SchemaDomainError("offset schema needs non-zero exponent and t")

    def _compute(self, key) -> Series:
        target = key + self.offset
        if not self.chain.contains(target):
            raise SchemaDomainError(f"{self.chain.name(key)} has no partner at offset {self.offset}")
        return Series.monomial(Monomial.fundamental(target, self.exponent), self.t)

    def describe(self) -> str:
        return f"offset {self.offset} exponent={self.exponent} t={self.t}"


class RuleSchema(DerivationSchema):
    """Schema given by an arbitrary function ``key -> Series``."""

    kind = "rule"

    def __init__(self, chain: FundamentalChain, rule: Callable, label: str = "rule", monomial: bool = False):
        super().__init__(chain)
        self.rule = rule
        self.label = label
        self.monomial = monomial

    def _compute(self, key) -> Series:
        return Series.coerce(self.rule(key))

    def describe(self) -> str:
        return self.label


# ---------------------------------------------------------------------------
# Extension to monomials and series
# ---------------------------------------------------------------------------


def log_derivative(schema: DerivationSchema, key) -> Series:
    return schema.log_derivative(key)


def derive_monomial(schema: DerivationSchema, alpha: Monomial) -> Series:
    """``alpha' = alpha * sum_phi alpha_phi * phi'/phi``."""
    cached = schema._mono_cache.get(alpha)
    if cached is not None:
        return cached
    acc: dict = {}
    for k, e in alpha.items():
        for c, m in schema.log_derivative(k).terms:
            mm = alpha * m
            acc[mm] = acc.get(mm, 0) + e * c
    result = Series._from_terms(_normalise(acc))
    schema._mono_cache[alpha] = result
    return result


def derive(schema: DerivationSchema, a: Series) -> Series:
    """Term-by-term derivative of a finitely supported series."""
    a = Series.coerce(a)
    acc: dict = {}
    for c, alpha in a.terms:
        for d, m in derive_monomial(schema, alpha).terms:
            acc[m] = acc.get(m, 0) + c * d
    if not acc:
        return ZERO
    return Series._from_terms(_normalise(acc))


def position(schema: DerivationSchema, key, tau: Monomial) -> int:
    """0-based rank of ``tau`` in the decreasing support of ``phi'/phi``."""
    try:
        return schema.support(key).index(tau)
    except ValueError:
        raise DomainError(f"{tau!r} is not in the support of the logarithmic derivative of "
                          f"{schema.chain.name(key)}") from None


def support_isomorphism(schema: DerivationSchema, mu, nu, tau: Monomial) -> Monomial:
    """Order isomorphism between the supports of ``mu'/mu`` and ``nu'/nu``, matched from the top."""
    i = position(schema, mu, tau)
    target = schema.support(nu)
    if i >= len(target):
        raise DomainError(f"position {i} has no partner in the support for {schema.chain.name(nu)}")
    return target[i]


def shift_defect(schema: DerivationSchema, mu, nu) -> Optional[int]:
    """First matched position ``i`` where ``I_{mu,nu}`` does not move strictly down, else ``None``."""
    src, dst = schema.support(mu), schema.support(nu)
    for i in range(min(len(src), len(dst))):
        if dst[i] >= src[i]:
            return i
    return None


def is_left_shift(schema: DerivationSchema, mu, nu) -> bool:
    return shift_defect(schema, mu, nu) is None


# ---------------------------------------------------------------------------
# Window checkers
# ---------------------------------------------------------------------------


class Condition(enum.Enum):
    H1PRIME = "h1prime"
    H1DOUBLEPRIME = "h1doubleprime"
    H2DOUBLEPRIME = "h2doubleprime"
    H3PRIME = "h3prime"

    @classmethod
    def parse(cls, text: str) -> "Condition":
        key = text.strip().lower().replace("'", "prime").replace("″", "doubleprime").replace("′", "prime")
        key = key.replace("primeprime", "doubleprime").replace("-", "").replace("_", "")
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown condition {text!r}")


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "FailsWithWitness"
    UNKNOWN = "UnknownAtDepth"


@dataclass(frozen=True)
class Witness:
    """Concrete data refuting a condition on a window.

    ``phis`` are the fundamentals involved, in the order the condition names
    them; ``taus`` the monomials from their logarithmic derivatives;
    ``lf`` the leading fundamental that triggered the failure, if any.
    """

    phis: tuple
    taus: tuple = ()
    lf: object = None
    clause: str = ""


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    window: tuple
    verdict: Verdict
    witness: Optional[Witness] = None
    #: members of E_1 or E_2 found in the window, or a certifying pair for H1''
    found: tuple = ()
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS


def _normalise_window(schema: DerivationSchema, window: Sequence) -> list:
    """Validate a window and return it ascending."""
    chain = schema.chain
    keys = [chain.key(k) if isinstance(k, str) else k for k in window]
    if not keys:
        raise WindowError("empty window")
    for k in keys:
        if not chain.contains(k):
            raise WindowError(f"{k!r} is not an element of the chain")
    if len(set(keys)) != len(keys):
        raise WindowError("window elements must be pairwise distinct")
    if all(a < b for a, b in zip(keys, keys[1:])):
        return keys
    if all(a > b for a, b in zip(keys, keys[1:])):
        return keys[::-1]
    raise WindowError("window must be sorted ascending or descending")


def e1_members(schema: DerivationSchema, window: Sequence) -> list:
    """``(phi, psi, i)`` for each ``phi`` in the window with some larger ``psi`` in the
    window such that ``I_{psi,phi}`` is not a left shift; ``i`` is the first bad position."""
    asc = _normalise_window(schema, window)
    out = []
    for i, phi in enumerate(asc):
        for psi in asc[i + 1:]:
            pos = shift_defect(schema, psi, phi)
            if pos is not None:
                out.append((phi, psi, pos))
                break
    return out


def e2_members(schema: DerivationSchema, window: Sequence) -> list:
    """``(psi, phi, tau_phi, tau_psi, lf)`` for each ``psi`` in E_2 restricted to the window."""
    asc = _normalise_window(schema, window)
    out = []
    for j, psi in enumerate(asc):
        hit = _e2_pair(schema, asc[:j], psi)
        if hit is not None:
            out.append(hit)
    return out


def _e2_pair(schema, lower: list, psi):
    for phi in lower:
        for tphi in schema.support(phi):
            for tpsi in schema.support(psi):
                lf = (tphi / tpsi).leading_fundamental
                if lf is not ONE and lf >= psi:
                    return (psi, phi, tphi, tpsi, lf)
    return None


def check_condition(schema: DerivationSchema, condition, window: Sequence) -> ConditionReport:
    if isinstance(condition, str):
        condition = Condition.parse(condition)
    asc = _normalise_window(schema, window)
    exact = schema.chain.finite
    if condition is Condition.H1PRIME:
        return _check_h1prime(schema, asc, exact)
    if condition is Condition.H1DOUBLEPRIME:
        return _check_h1doubleprime(schema, asc, exact)
    if condition is Condition.H2DOUBLEPRIME:
        return _check_h2doubleprime(schema, asc, exact)
    if condition is Condition.H3PRIME:
        return check_h3prime(schema, asc)
    raise ValueError(f"unsupported condition {condition!r}")


def _check_h1prime(schema, asc, exact) -> ConditionReport:
    members = e1_members(schema, asc)
    found = tuple(m[0] for m in members)
    win = tuple(asc)
    if not members:
        return ConditionReport(Condition.H1PRIME, win, Verdict.HOLDS, found=())
    if exact:
        # a finite subset of a chain is always well ordered
        return ConditionReport(Condition.H1PRIME, win, Verdict.HOLDS, found=found,
                               note="finite chain: E_1 is finite")
    phi, psi, pos = members[0]
    if phi == asc[0]:
        # E_1 reaches the bottom of the sample: a descending run in E_1
        wit = Witness((phi, psi), (schema.support(psi)[pos], schema.support(phi)[pos]),
                      clause=f"I_(psi,phi) not a left shift at position {pos}")
        return ConditionReport(Condition.H1PRIME, win, Verdict.FAILS, wit, found)
    return ConditionReport(Condition.H1PRIME, win, Verdict.UNKNOWN, found=found)


def _check_h1doubleprime(schema, asc, exact) -> ConditionReport:
    desc = asc[::-1]
    win = tuple(desc)
    if exact:
        return ConditionReport(Condition.H1DOUBLEPRIME, win, Verdict.HOLDS,
                               note="finite chain: no infinite descending sequence")
    for m in range(len(desc)):
        for n in range(m + 1, len(desc)):
            if is_left_shift(schema, desc[m], desc[n]):
                return ConditionReport(Condition.H1DOUBLEPRIME, win, Verdict.HOLDS,
                                       found=(desc[m], desc[n]))
    if len(desc) < 2:
        return ConditionReport(Condition.H1DOUBLEPRIME, win, Verdict.UNKNOWN)
    wit = Witness(tuple(desc), clause="no pair m<n with I_(phi_m,phi_n) a left shift")
    return ConditionReport(Condition.H1DOUBLEPRIME, win, Verdict.FAILS, wit)


def _check_h2doubleprime(schema, asc, exact) -> ConditionReport:
    members = e2_members(schema, asc)
    found = tuple(m[0] for m in members)
    win = tuple(asc)
    if not members:
        return ConditionReport(Condition.H2DOUBLEPRIME, win, Verdict.HOLDS)
    if exact:
        return ConditionReport(Condition.H2DOUBLEPRIME, win, Verdict.HOLDS, found=found,
                               note="finite chain: E_2 is finite")
    if found[-1] == asc[-1]:
        psi, phi, tphi, tpsi, lf = members[0]
        wit = Witness((psi, phi), (tphi, tpsi), lf, clause="LF(tau_phi/tau_psi) >= psi")
        return ConditionReport(Condition.H2DOUBLEPRIME, win, Verdict.FAILS, wit, found)
    return ConditionReport(Condition.H2DOUBLEPRIME, win, Verdict.UNKNOWN, found=found)


def h3prime_violation(schema: DerivationSchema, phi, psi) -> Optional[Witness]:
    """The failing clause of the Hardy criterion for ``phi < psi``, or ``None``."""
    tphi, tpsi = schema.theta(phi), schema.theta(psi)
    if not tphi < tpsi:
        return Witness((phi, psi), (tphi, tpsi), clause="theta(phi) < theta(psi) fails")
    lf = (tphi / tpsi).leading_fundamental
    if lf is not ONE and lf >= psi:
        return Witness((phi, psi), (tphi, tpsi), lf, clause="LF(theta(phi)/theta(psi)) < psi fails")
    return None


def check_h3prime(schema: DerivationSchema, window: Sequence) -> ConditionReport:
    """Scan all pairs ``phi < psi`` of the window for the Hardy-type criterion."""
    asc = _normalise_window(schema, window)
    for i, phi in enumerate(asc):
        for psi in asc[i + 1:]:
            wit = h3prime_violation(schema, phi, psi)
            if wit is not None:
                return ConditionReport(Condition.H3PRIME, tuple(asc), Verdict.FAILS, wit)
    return ConditionReport(Condition.H3PRIME, tuple(asc), Verdict.HOLDS)


def confirm_witness(schema: DerivationSchema, report: ConditionReport) -> bool:
    """Re-check a failure witness from scratch, without the window scan."""
    w = report.witness
    if w is None:
        return False
    c = report.condition
    if c is Condition.H3PRIME:
        phi, psi = w.phis
        if not phi < psi:
            return False
        tphi, tpsi = schema.log_derivative(phi).leading_monomial, schema.log_derivative(psi).leading_monomial
        if (tphi, tpsi) != w.taus:
            return False
        if tphi.compare(tpsi) >= 0:
            return True
        lf = (tphi / tpsi).leading_fundamental
        return lf is not ONE and lf >= psi
    if c is Condition.H2DOUBLEPRIME:
        psi, phi = w.phis
        tphi, tpsi = w.taus
        if not phi < psi:
            return False
        if tphi not in schema.log_derivative(phi).support or tpsi not in schema.log_derivative(psi).support:
            return False
        lf = (tphi / tpsi).leading_fundamental
        return lf is not ONE and lf >= psi and lf == w.lf
    if c is Condition.H1PRIME:
        phi, psi = w.phis
        tpsi, tphi = w.taus
        if not phi < psi:
            return False
        sp, sf = schema.log_derivative(psi).support, schema.log_derivative(phi).support
        return tpsi in sp and tphi in sf and sp.index(tpsi) == sf.index(tphi) and tphi >= tpsi
    if c is Condition.H1DOUBLEPRIME:
        seq = w.phis
        if any(a <= b for a, b in zip(seq, seq[1:])):
            return False
        for m in range(len(seq)):
            for n in range(m + 1, len(seq)):
                src = schema.log_derivative(seq[m]).support
                dst = schema.log_derivative(seq[n]).support
                if all(d < s for s, d in zip(src, dst)):
                    return False
        return True
    return False


__all__ = [
    "DerivationSchema", "ExplicitTable", "LogExpChain", "ShiftMonomial", "RealIndexedPower",
    "GeneralShift", "IndexOffset", "RuleSchema", "log_derivative", "derive_monomial", "derive",
    "position", "support_isomorphism", "shift_defect", "is_left_shift", "Condition", "Verdict",
    "Witness", "ConditionReport", "e1_members", "e2_members", "check_condition", "check_h3prime",
    "h3prime_violation", "confirm_witness",
]
