"""Asymptotic integration of monomials and budgeted integration of series."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .derivation import (
    DerivationSchema,
    GeneralShift,
    LogExpChain,
    RealIndexedPower,
    ShiftMonomial,
    Verdict,
    check_h3prime,
    derive,
    derive_monomial,
)
from .errors import DomainError, NoAsymptoticIntegral, SearchExhausted
from .monomial import ONE, ONE_MONOMIAL, Monomial
from .series import ZERO, Series

DEFAULT_PROBE = 16


@dataclass(frozen=True)
class ThetaInfo:
    phi: object
    theta: Monomial
    F: Fraction


def theta_info(schema: DerivationSchema, key) -> ThetaInfo:
    d = schema.log_derivative(key)
    return ThetaInfo(key, d.leading_monomial, d.leading_coefficient)


class GlbKind(enum.Enum):
    ATTAINED = "Attained"
    NOT_IN_GAMMA = "NotInGamma"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GlbResult:
    kind: GlbKind
    value: Optional[Monomial] = None
    note: str = ""

    @property
    def attained(self) -> bool:
        return self.kind is GlbKind.ATTAINED


def theta_glb(schema: DerivationSchema, probe_depth: int = DEFAULT_PROBE) -> GlbResult:
    """Greatest lower bound of the ``theta(phi)``, when it can be certified."""
    dom = schema.domain()
    if dom is not None:
        return GlbResult(GlbKind.ATTAINED, min(schema.theta(k) for k in dom), "minimum over a finite domain")
    if isinstance(schema, LogExpChain):
        return GlbResult(GlbKind.NOT_IN_GAMMA, note="theta strictly decreasing without bound in the group")
    if isinstance(schema, ShiftMonomial) and schema.chain.least is None:
        # every theta is > 1 and has leading fundamental below phi, so no
        # monomial above 1 bounds them from below: the glb is 1 itself
        return GlbResult(GlbKind.ATTAINED, ONE_MONOMIAL, "theta > 1 with LF(theta(phi)) < phi")
    if isinstance(schema, GeneralShift):
        return GlbResult(GlbKind.ATTAINED, schema.gamma, "theta(phi)/gamma > 1 tends to 1")
    if isinstance(schema, RealIndexedPower):
        return GlbResult(GlbKind.ATTAINED, schema.theta(schema.chain.least), "theta increases with the index")
    least = schema.chain.least
    if least is not None:
        a = schema.chain.anchor()
        keys = schema.window(least, max(a, least) + probe_depth)
        if check_h3prime(schema, keys).verdict is Verdict.HOLDS:
            return GlbResult(GlbKind.ATTAINED, schema.theta(least),
                             f"theta increasing on a window of {len(keys)} keys above the least element")
    return GlbResult(GlbKind.UNKNOWN, note=f"no certificate after {probe_depth} probes")


def _case3_candidates(schema: DerivationSchema, alpha: Monomial, phi0, probe: int) -> list:
    """Keys below ``phi0`` (all keys when ``phi0`` is ONE), in descending order."""
    chain = schema.chain
    dom = schema.domain()
    if dom is not None:
        return [k for k in sorted(dom, reverse=True) if phi0 is ONE or k < phi0]
    if chain.discrete:
        if phi0 is ONE:
            top = chain.anchor() + probe
            return chain.span(top - 2 * probe, top)[::-1]
        # walk past the lowest fundamental of alpha so closed-form answers are in reach
        lowest = min(alpha.support) if alpha.support else phi0
        depth = probe + max(0, int(phi0 - lowest))
        return chain.below(phi0, depth)
    # dense chains: use the fundamentals the formula can touch
    cands = set(alpha.support)
    if phi0 is not ONE:
        cands.update(schema.theta(phi0).support)
    else:
        cands.update(schema.probe_window(probe))
    if chain.least is not None:
        cands.add(chain.least)
    return sorted((k for k in cands if chain.contains(k) and (phi0 is ONE or k < phi0)), reverse=True)


def _find_phi1(schema: DerivationSchema, alpha: Monomial, phi0, probe: int):
    for k in _case3_candidates(schema, alpha, phi0, probe):
        if (alpha / schema.theta(k)).leading_fundamental == k:
            return k
    where = "anywhere" if phi0 is ONE else f"below {schema.chain.name(phi0)}"
    raise SearchExhausted(f"no fundamental phi1 with LF(alpha/theta(phi1)) = phi1 found {where} within the probe")


def integral_case(schema: DerivationSchema, alpha: Monomial, probe: int = DEFAULT_PROBE) -> tuple:
    """``(case number, phi_i, coefficient)`` such that ``coefficient * alpha/theta(phi_i)`` integrates ``alpha``."""
    if alpha.is_one():
        phi1 = _find_phi1(schema, alpha, ONE, probe)
        t1 = theta_info(schema, phi1)
        return 3, phi1, 1 / (t1.F * (alpha.exponent(phi1) - t1.theta.exponent(phi1)))
    phi0 = alpha.leading_fundamental
    t0 = theta_info(schema, phi0)
    lf_theta = t0.theta.leading_fundamental
    if lf_theta is not ONE and lf_theta > phi0:
        t1 = theta_info(schema, lf_theta)
        return 2, lf_theta, 1 / (-t1.F * t0.theta.exponent(lf_theta))
    if (alpha / t0.theta).leading_fundamental == phi0:
        return 1, phi0, 1 / (t0.F * (alpha.exponent(phi0) - t0.theta.exponent(phi0)))
    phi1 = _find_phi1(schema, alpha, phi0, probe)
    t1 = theta_info(schema, phi1)
    return 3, phi1, 1 / (t1.F * (alpha.exponent(phi1) - t1.theta.exponent(phi1)))


def asymptotic_integral(schema: DerivationSchema, a, probe: int = DEFAULT_PROBE) -> Series:
    """A single term ``b`` with ``LT(b') = LT(a)``."""
    a = Series.coerce(a)
    if a.is_zero():
        raise DomainError("the zero series has no asymptotic integral")
    alpha, c = a.leading_monomial, a.leading_coefficient
    glb = theta_glb(schema, probe)
    if glb.attained and alpha == glb.value:
        raise NoAsymptoticIntegral(f"leading monomial equals the lower bound of theta ({glb.note})")
    _, phi, coef = integral_case(schema, alpha, probe)
    b = Series.monomial(alpha / schema.theta(phi), c * coef)
    db = derive(schema, b)
    if db.is_zero() or db.terms[0] != a.terms[0]:
        raise NoAsymptoticIntegral("the integration formula does not reproduce the leading term; "
                                   "the schema is not of Hardy type around this monomial")
    return b


def _abs(m: Monomial) -> Monomial:
    return m if m >= ONE_MONOMIAL else m.inverse()


def _u1_for(schema: DerivationSchema, alpha: Monomial, keys: list):
    for k in reversed(keys):
        if schema.theta(k) < alpha:
            return k
    return None


def rosenlicht_u0(schema: DerivationSchema, alpha: Monomial, probe: int = DEFAULT_PROBE) -> Monomial:
    """Auxiliary monomial ``u0`` for ``alpha``.

    ``u1`` is the largest probed fundamental with ``theta(u1) < alpha`` (``alpha``
    is replaced by its inverse when no such fundamental exists) and
    ``u0 = min(u1, alpha/theta(u1))``.
    """
    glb = theta_glb(schema, probe)
    if glb.attained and alpha == glb.value:
        raise NoAsymptoticIntegral("alpha equals the lower bound of theta")
    keys = schema.probe_window(probe)
    k = _u1_for(schema, alpha, keys)
    if k is None:
        alpha = alpha.inverse()
        k = _u1_for(schema, alpha, keys)
    if k is None:
        raise SearchExhausted("no probed fundamental has theta below alpha or its inverse")
    u1 = Monomial.fundamental(k)
    return min(u1, alpha / schema.theta(k))


def log_derivative_lm(schema: DerivationSchema, u: Monomial) -> Monomial:
    """``LM(u'/u)`` of a monomial ``u`` other than 1."""
    return derive_monomial(schema, u).leading_monomial / u


@dataclass(frozen=True)
class IntegrationResult:
    antiderivative: Series
    residual: Series
    steps_used: int
    exact: bool
    #: leading monomials of the successive residuals, starting with the input's
    trace: tuple = ()


def integrate(schema: DerivationSchema, a, budget: int, probe: int = DEFAULT_PROBE) -> IntegrationResult:
    """Refine asymptotic integrals until the residual vanishes or ``budget`` steps are used."""
    a = Series.coerce(a)
    if a.is_zero():
        raise DomainError("integrate needs a non-zero series")
    if budget < 1:
        raise DomainError("integration budget must be at least 1")
    b = ZERO
    r = a
    trace = [a.leading_monomial]
    steps = 0
    while not r.is_zero() and steps < budget:
        step = asymptotic_integral(schema, r.leading_term, probe)
        b = b + step
        nr = r - derive(schema, step)
        steps += 1
        if not nr.is_zero():
            if not nr.leading_monomial < r.leading_monomial:
                raise DomainError("refinement did not lower the residual's leading monomial")
            trace.append(nr.leading_monomial)
        r = nr
    return IntegrationResult(b, r, steps, r.is_zero(), tuple(trace))


__all__ = [
    "ThetaInfo", "theta_info", "GlbKind", "GlbResult", "theta_glb", "integral_case",
    "asymptotic_integral", "rosenlicht_u0", "log_derivative_lm", "IntegrationResult", "integrate",
    "DEFAULT_PROBE",
]
