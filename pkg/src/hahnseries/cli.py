"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (error name first), 2 on
usage, parse, config or window errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .asympint import GlbKind, asymptotic_integral, integrate, rosenlicht_u0, theta_glb
from .config import Session, load_session
from .derivation import Condition, ConditionReport, check_condition, derive
from .errors import ConfigError, DomainError, HahnError, ParseError, WindowError
from .hardy import check_hfield, hardy_report, verify_lhospital, verify_log_compat
from .series import invert
from .text import format_monomial, format_series, parse_series

COMMANDS = {
    "derive": 1, "asymp-int": 1, "int": 1, "invert": 1, "u0": 1,
    "check": 1, "hfield": 0, "lhospital": 2, "logcompat": 2, "glb": 0, "hardy": 0,
}
_VALUED = ("--config", "--budget", "--probe", "--seed", "--window", "--samples")


class UsageError(HahnError):
    pass


def _split_argv(argv: Sequence[str]) -> list:
    """Move options first so positional expressions may start with ``-``."""
    opts, pos = [], []
    it = iter(argv)
    for tok in it:
        if tok in ("-h", "--help"):
            opts.append(tok)
        elif tok in _VALUED:
            opts.append(tok + "=" + next(it, ""))
        elif tok.startswith("--") and tok.split("=", 1)[0] in _VALUED:
            opts.append(tok)
        elif tok == "--":
            pos.extend(it)
        else:
            pos.append(tok)
    return opts + ["--"] + pos


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hahnseries",
        description="Exact generalised series with derivations.",
        epilog="commands: " + ", ".join(COMMANDS),
    )
    p.add_argument("--config", help="session file (chain, schema, budgets); default log-exp chain")
    p.add_argument("--budget", type=int, help="integration budget (also the inversion term count)")
    p.add_argument("--probe", type=int, help="probe depth for searches and default windows")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled verifiers")
    p.add_argument("--samples", type=int, default=200, help="sample count for the hardy command")
    p.add_argument("--window", help="inclusive range LO..HI of indices or names")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("args", nargs="*")
    return p


def _parse_bound(session: Session, text: str):
    text = text.strip()
    try:
        return session.chain.key(text)
    except DomainError:
        pass
    try:
        q = Fraction(text)
    except ValueError:
        raise WindowError(f"bad window bound {text!r}") from None
    return q.numerator if q.denominator == 1 else q


def _window(session: Session, text: Optional[str]) -> list:
    if text is None:
        return session.schema.probe_window(session.budgets.probe)
    if ".." not in text:
        raise WindowError(f"window must look like LO..HI, got {text!r}")
    lo, hi = text.split("..", 1)
    lo, hi = _parse_bound(session, lo), _parse_bound(session, hi)
    if lo > hi:
        raise WindowError("window bounds must satisfy LO <= HI")
    keys = session.schema.window(lo, hi)
    if not keys:
        raise WindowError("window contains no chain element")
    return keys


def _names(session: Session, keys) -> str:
    return " ".join(session.chain.name(k) for k in keys)


def _render_report(session: Session, rep: ConditionReport) -> list:
    name = session.chain.name
    lines = [rep.verdict.value, "window: " + _names(session, rep.window)]
    if rep.condition in (Condition.H1PRIME, Condition.H2DOUBLEPRIME):
        label = "E_1" if rep.condition is Condition.H1PRIME else "E_2"
        lines.append(f"{label} in window: " + (_names(session, rep.found) or "empty"))
    elif rep.condition is Condition.H1DOUBLEPRIME and rep.found:
        lines.append("left shift pair: " + _names(session, rep.found))
    w = rep.witness
    if w is not None:
        if rep.condition is Condition.H2DOUBLEPRIME:
            psi, phi = w.phis
            lines.append(f"witness: psi={name(psi)} phi={name(phi)} lf={name(w.lf)}")
        elif rep.condition is Condition.H1DOUBLEPRIME:
            lines.append("witness: " + _names(session, w.phis))
        else:
            parts = [f"phi={name(w.phis[0])}", f"psi={name(w.phis[1])}"]
            if w.lf is not None:
                parts.append(f"lf={name(w.lf)}")
            lines.append("witness: " + " ".join(parts))
        if w.taus:
            lines.append("taus: " + ", ".join(format_monomial(t, session.chain) for t in w.taus))
        lines.append("clause: " + w.clause)
    if rep.note:
        lines.append("note: " + rep.note)
    return lines


def _bool(v: bool) -> str:
    return "true" if v else "false"


def execute(session: Session, command: str, args: list, ns) -> list:
    chain, schema, probe = session.chain, session.schema, session.budgets.probe
    fmt = lambda s: format_series(s, chain)  # noqa: E731
    expr = [parse_series(a, chain) for a in args] if command not in ("check",) else []
    if command == "derive":
        return [fmt(derive(schema, expr[0]))]
    if command == "asymp-int":
        return [fmt(asymptotic_integral(schema, expr[0], probe))]
    if command == "int":
        res = integrate(schema, expr[0], session.budgets.integrate, probe)
        return [fmt(res.antiderivative), "residual: " + fmt(res.residual), "exact: " + _bool(res.exact)]
    if command == "invert":
        return [fmt(invert(expr[0], session.budgets.invert))]
    if command == "u0":
        a = expr[0]
        if len(a) != 1:
            raise DomainError("u0 expects a single monomial")
        return [format_monomial(rosenlicht_u0(schema, a.leading_monomial, probe), chain)]
    if command == "check":
        try:
            cond = Condition.parse(args[0])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return _render_report(session, check_condition(schema, cond, _window(session, ns.window)))
    if command == "hfield":
        res = check_hfield(schema, _window(session, ns.window))
        return ["Yes"] if res.yes else [f"No {chain.name(res.witness)}"]
    if command == "lhospital":
        return [_bool(verify_lhospital(schema, *expr))]
    if command == "logcompat":
        return [_bool(verify_log_compat(schema, *expr))]
    if command == "glb":
        g = theta_glb(schema, probe)
        head = g.kind.value if g.kind is not GlbKind.ATTAINED else f"Attained {format_monomial(g.value, chain)}"
        return [head] + ([f"note: {g.note}"] if g.note else [])
    if command == "hardy":
        rep = hardy_report(schema, _window(session, ns.window), ns.samples, ns.seed)
        bad_lh = [s for s in rep.lhospital_samples if not s.ok]
        bad_lc = [s for s in rep.logcompat_samples if not s.ok]
        lines = ["Hardy" if rep.hardy else "NotHardy",
                 "h3prime: " + rep.h3prime.verdict.value,
                 f"lhospital: {len(rep.lhospital_samples) - len(bad_lh)}/{len(rep.lhospital_samples)}",
                 f"logcompat: {len(rep.logcompat_samples) - len(bad_lc)}/{len(rep.logcompat_samples)}",
                 "hfield: " + ("Yes" if rep.hfield.yes else f"No {chain.name(rep.hfield.witness)}")]
        for s in rep.refutations[:3]:
            lines.append(f"refutation {s.kind}: a={fmt(s.a)} b={fmt(s.b)}")
        return lines
    raise UsageError(f"unknown command {command!r}")


def run(argv: Sequence[str], out=None) -> int:
    """Run one command; returns the exit status."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(_split_argv(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if len(ns.args) != COMMANDS[ns.command]:
            raise UsageError(f"{ns.command} expects {COMMANDS[ns.command]} argument(s), got {len(ns.args)}")
        session = load_session(ns.config).with_budgets(
            integrate=ns.budget, invert=ns.budget, probe=ns.probe)
        lines = execute(session, ns.command, ns.args, ns)
    except (ParseError, ConfigError, WindowError, UsageError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=out)
        return 2
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=out)
        return 1
    for line in lines:
        print(line, file=out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
