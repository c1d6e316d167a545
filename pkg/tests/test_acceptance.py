"""Acceptance criteria at their stated sizes.

Each test records one PASS/FAIL line (shown in the terminal summary) before
asserting.  Run this file directly to print the lines without pytest.
"""
import io
import random
import time
from fractions import Fraction

import pytest

from hahnseries import (
    Condition,
    FiniteChain,
    IndexOffset,
    IntegerChain,
    LogExpChain,
    Monomial,
    Series,
    ShiftMonomial,
    Verdict,
    check_condition,
    derive,
    format_series,
    parse_series,
)
from hahnseries.asympint import asymptotic_integral, integrate
from hahnseries.derivation import confirm_witness, e1_members, e2_members
from hahnseries.hardy import (
    check_h3prime,
    check_hfield,
    refute_witness,
    sample_lhospital,
    sample_log_compat,
)
from hahnseries.monomial import ONE, lf_max, sign
from hahnseries.sampling import random_monomial, random_series
from hahnseries.series import preceq
from hahnseries.cli import run
from oracles import naive_compare, naive_mul, sympy_derivative_matches

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

# pinned sizes and tolerances
MONOMIAL_TRIPLES = 10_000
SERIES_PAIRS = 5_000
DERIVATION_PAIRS = 5_000
HARDY_WINDOW = (-5, 5)
HARDY_PAIRS = 2_000
SHIFT_WINDOW_MAX = 50
ASYMP_MONOMIALS = 500
ASYMP_INDEX_RANGE = range(-4, 5)
ASYMP_EXPONENT_BOUND = 5
INTEGRATE_BUDGET = 6
INTEGRATE_CORPUS = 300
ROUND_TRIPS = 1_000
SUITE_SECONDS = 60.0
ALLOWED_FAILURES = 0
SEED = 20240601

LE = LogExpChain()


def s(text):
    return parse_series(text, LE.chain)


def record(number, title, failures, elapsed, detail=""):
    ok = failures <= ALLOWED_FAILURES and elapsed < SUITE_SECONDS
    line = (f"[{'PASS' if ok else 'FAIL'}] criterion {number} {title}: "
            f"{failures} failures, {elapsed:.1f}s{', ' + detail.strip() if detail else ''}")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


class Tally:
    def __init__(self):
        self.failures = 0
        self.first = None

    def check(self, cond, what):
        if not cond:
            self.failures += 1
            self.first = self.first or what

    @property
    def detail(self):
        return f"first failure: {self.first}" if self.first else ""


def _naive_le(d):
    if not d:
        return None
    return d[max(d)]


def criterion_1():
    t0, tally = time.perf_counter(), Tally()
    r = random.Random(SEED)
    chains = [(FiniteChain(("a", "b", "c", "d", "e", "f")), list(range(6))),
              (IntegerChain("phi_{k}"), list(range(-6, 7)))]
    for chain, keys in chains:
        for _ in range(MONOMIAL_TRIPLES):
            a, b, c = (random_monomial(r, keys, 4) for _ in range(3))
            ea, eb = a.exponents, b.exponents
            cmp_ab = naive_compare(ea, eb)
            tally.check(a.compare(b) == cmp_ab, ("order", a, b))
            tally.check([a < b, a == b, a > b].count(True) == 1, ("trichotomy", a, b))
            if a <= b and b <= c:
                tally.check(a <= c, ("transitivity", a, b, c))
            tally.check((a * b) * c == a * (b * c) and a * b == b * a, ("group", a, b, c))
            tally.check((a * b).exponents == naive_mul(ea, eb), ("product", a, b))
            tally.check((a * a.inverse()).is_one() and a * Monomial() == a, ("inverse", a))
            if a < b:
                tally.check(a * c < b * c, ("compatibility", a, b, c))
            # leading fundamental and exponent laws
            q = naive_mul(eb, {k: -e for k, e in ea.items()})
            if q:
                tally.check((a < b) == (_naive_le(q) > 0), ("quotient exponent", a, b))
            rr = Fraction(r.randint(-6, 6), r.randint(1, 3)) or Fraction(1)
            if not a.is_one():
                p = a ** rr
                tally.check(p.leading_fundamental == a.leading_fundamental
                            and p.leading_exponent == rr * a.leading_exponent, ("power", a, rr))
            if sign(a) == sign(b):
                tally.check((a * b).leading_fundamental == lf_max(a.leading_fundamental, b.leading_fundamental),
                            ("same-sign product", a, b))
            lf_q = (b / a).leading_fundamental
            lf_b = b.leading_fundamental
            if lf_b is not ONE and (lf_q is ONE or lf_q < lf_b):
                tally.check(a.leading_fundamental == lf_b and a.leading_exponent == b.leading_exponent
                            and sign(a) == sign(b), ("quotient drop", a, b))
    return record(1, "ordered group", tally.failures, time.perf_counter() - t0,
                  f"{MONOMIAL_TRIPLES} triples per chain " + tally.detail)


def criterion_2():
    t0, tally = time.perf_counter(), Tally()
    r = random.Random(SEED + 2)
    keys = list(range(-4, 5))
    zero, one = Series(), Series.constant(1)
    tally.check(preceq(zero, one) and not preceq(one, zero), "zero below one")
    for _ in range(SERIES_PAIRS):
        a, b, c = (random_series(r, keys) for _ in range(3))
        if a and b:
            tally.check((a * b).leading_monomial == a.leading_monomial * b.leading_monomial, ("LM product", a, b))
            total = a + b
            top = max(a.leading_monomial, b.leading_monomial)
            if total:
                tally.check(total.leading_monomial <= top, ("ultrametric", a, b))
            if a.leading_monomial != b.leading_monomial:
                tally.check(bool(total) and total.leading_monomial == top, ("ultrametric equality", a, b))
        tally.check(preceq(a, a), ("reflexive", a))
        if preceq(a, b) and preceq(b, c):
            tally.check(preceq(a, c), ("transitive", a, b, c))
        tally.check(preceq(a, b) or preceq(b, a), ("total", a, b))
        if preceq(a, b):
            tally.check(preceq(a * c, b * c), ("multiplicative", a, b, c))
        if preceq(a, c) and preceq(b, c):
            tally.check(preceq(a - b, c), ("difference", a, b, c))
        lo, hi = sorted((a, b))
        if lo >= 0:
            tally.check(preceq(lo, hi), ("positive order", lo, hi))
    return record(2, "valuation", tally.failures, time.perf_counter() - t0,
                  f"{SERIES_PAIRS} pairs " + tally.detail)


def criterion_3():
    t0, tally = time.perf_counter(), Tally()
    r = random.Random(SEED + 3)
    keys = list(range(-3, 4))
    for _ in range(DERIVATION_PAIRS):
        a, b = random_series(r, keys, 3), random_series(r, keys, 3)
        q = Fraction(r.randint(-9, 9), r.randint(1, 5))
        da, db = derive(LE, a), derive(LE, b)
        tally.check(derive(LE, a * b) == da * b + a * db, ("Leibniz", a, b))
        tally.check(derive(LE, a + b.scale(q)) == da + db.scale(q), ("linearity", a, b, q))
    values = [("E_2", "E_1*E_2"), ("x", "1"), ("E_-1", "x^-1")]
    for a, expected in values:
        tally.check(derive(LE, s(a)) == s(expected), ("value", a))
        tally.check(sympy_derivative_matches(s(a), s(expected)), ("oracle", a))
    return record(3, "derivation", tally.failures, time.perf_counter() - t0,
                  f"{DERIVATION_PAIRS} pairs " + tally.detail)


def criterion_4():
    t0, tally = time.perf_counter(), Tally()
    window = LE.window(*HARDY_WINDOW)
    tally.check(check_h3prime(LE, window).verdict is Verdict.HOLDS, "h3prime on the log-exp window")
    lh = sample_lhospital(LE, window, HARDY_PAIRS, seed=SEED)
    lc = sample_log_compat(LE, window, HARDY_PAIRS, seed=SEED + 1)
    tally.check(len(lh) == len(lc) == HARDY_PAIRS, "sample counts")
    for x in lh + lc:
        tally.check(x.ok, (x.kind, x.a, x.b))
    tally.check(check_hfield(LE, window).yes, "hfield")
    adv = IndexOffset(IntegerChain("phi_{k}"), 1)
    rep = check_h3prime(adv, range(0, 6))
    tally.check(rep.verdict is Verdict.FAILS and confirm_witness(adv, rep), "adversarial verdict")
    refs = refute_witness(adv, *rep.witness.phis) if rep.witness else []
    tally.check(len(refs) >= 1, "refutation from the witness")
    return record(4, "hardy", tally.failures, time.perf_counter() - t0,
                  f"{len(lh)}+{len(lc)} pairs, {len(refs)} refutations " + tally.detail)


def criterion_5():
    t0, tally = time.perf_counter(), Tally()
    chain = IntegerChain("phi_{k}", shift_step=1)
    schemas = [ShiftMonomial(chain, (1,)),
               ShiftMonomial(chain, (1, -1), t=2),
               ShiftMonomial(chain, (Fraction(1, 2), 3, -2)),
               ShiftMonomial(chain, (1, Fraction(-1, 3)), repeat=True, cap=5)]
    windows = 0
    for sch in schemas:
        for size in range(1, SHIFT_WINDOW_MAX + 1):
            w = list(range(-size // 2, -size // 2 + size))
            windows += 1
            tally.check(e1_members(sch, w) == [], ("E_1", sch.describe(), size))
            tally.check(e2_members(sch, w) == [], ("E_2", sch.describe(), size))
    adv = IndexOffset(IntegerChain("phi_{k}"), 1)
    rep = check_condition(adv, Condition.H2DOUBLEPRIME, range(0, 6))
    tally.check(rep.verdict is Verdict.FAILS and confirm_witness(adv, rep), "fixture witness")
    if rep.witness is not None:
        # recompute the defining inequality from the raw logarithmic derivatives
        psi, phi = rep.witness.phis
        hit = any((tp / tq).leading_fundamental not in (ONE,) and (tp / tq).leading_fundamental >= psi
                  for tp in adv.log_derivative(phi).support for tq in adv.log_derivative(psi).support)
        tally.check(phi < psi and hit, "independent recheck")
    return record(5, "checker", tally.failures, time.perf_counter() - t0,
                  f"{windows} windows " + tally.detail)


def criterion_6():
    t0, tally = time.perf_counter(), Tally()
    r = random.Random(SEED + 6)
    for _ in range(ASYMP_MONOMIALS):
        alpha = random_monomial(r, list(ASYMP_INDEX_RANGE), 3, ASYMP_EXPONENT_BOUND)
        a = Series.monomial(alpha)
        try:
            b = asymptotic_integral(LE, a)
            tally.check(derive(LE, b).leading_term == a, ("contract", alpha))
        except Exception as exc:  # counted, not hidden
            tally.check(False, ("raised", alpha, type(exc).__name__))
    worked = [("E_1", "E_1"), ("x", "1/2*x^2"), ("x^-1", "E_-1"), ("E_-1", "x*E_-1")]
    for a, expected in worked:
        tally.check(asymptotic_integral(LE, s(a)) == s(expected), ("worked", a))
    return record(6, "asymptotic integration", tally.failures, time.perf_counter() - t0,
                  f"{ASYMP_MONOMIALS} monomials " + tally.detail)


def criterion_7():
    t0, tally = time.perf_counter(), Tally()
    for a in ("1", "E_-1", "x^-1*E_-1^-1", "x*E_1"):
        res = integrate(LE, s(a), INTEGRATE_BUDGET)
        tally.check(res.exact and res.residual.is_zero(), ("exact", a))
        tally.check(derive(LE, res.antiderivative) == s(a), ("reconstruct", a))
    r = random.Random(SEED + 7)
    keys = list(range(-3, 4))
    for _ in range(INTEGRATE_CORPUS):
        a = random_series(r, keys, 3, allow_zero=False)
        try:
            res = integrate(LE, a, INTEGRATE_BUDGET)
        except Exception as exc:
            tally.check(False, ("raised", a, type(exc).__name__))
            continue
        tally.check(all(x > y for x, y in zip(res.trace, res.trace[1:])), ("descent", a))
        tally.check(derive(LE, res.antiderivative) + res.residual == a, ("reconstruct", a))
    return record(7, "integration", tally.failures, time.perf_counter() - t0,
                  f"{INTEGRATE_CORPUS} random inputs " + tally.detail)


def criterion_8():
    t0, tally = time.perf_counter(), Tally()
    r = random.Random(SEED + 8)
    keys = list(range(-4, 5))
    for _ in range(ROUND_TRIPS):
        a = random_series(r, keys)
        text = format_series(a, LE.chain)
        back = parse_series(text, LE.chain)
        tally.check(back == a and format_series(back, LE.chain) == text, ("round trip", text))
    runs = [(["derive", "E_2"], "E_1*E_2", 0),
            (["int", "E_-1", "--budget", "4"], "x*E_-1 - x", 0),
            (["check", "h3prime", "--window", "-2..3"], "Holds", 0)]
    for argv, first, status in runs:
        buf = io.StringIO()
        code = run(argv, out=buf)
        tally.check(code == status and buf.getvalue().split("\n")[0] == first, ("cli", argv))
    buf = io.StringIO()
    run(["int", "E_-1", "--budget", "4"], out=buf)
    tally.check(buf.getvalue() == "x*E_-1 - x\nresidual: 0\nexact: true\n", "cli integrate output")
    return record(8, "cli", tally.failures, time.perf_counter() - t0,
                  f"{ROUND_TRIPS} round trips " + tally.detail)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    raise SystemExit(0 if all(results) else 1)
