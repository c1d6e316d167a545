"""Session configuration: one INI file describing chain, schema and budgets.

Example::

    [chain]
    kind = integer          ; logexp | finite | integer | rational
    pattern = phi_{k}
    shift = 1               ; shift step, or yes/no for finite chains
    min = 0                 ; optional least index

    [aliases]
    0 = x

    [schema]
    kind = shift            ; logexp | table | shift | power | general | offset
    exponents = 1, -1/2
    t = 1

    [table]                 ; only for kind = table: name = series text
    a = b^-1

    [budgets]
    invert = 8
    integrate = 8
    probe = 16
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .derivation import (
    DerivationSchema,
    ExplicitTable,
    GeneralShift,
    IndexOffset,
    LogExpChain,
    RealIndexedPower,
    ShiftMonomial,
)
from .errors import ConfigError, HahnError
from .monomial import FiniteChain, FundamentalChain, IntegerChain, RationalChain, log_exp_chain
from .text import parse_monomial, parse_series


@dataclass(frozen=True)
class Budgets:
    invert: int = 8
    integrate: int = 8
    probe: int = 16

    def __post_init__(self):
        for name in ("invert", "integrate", "probe"):
            if getattr(self, name) < 1:
                raise ConfigError(f"budget {name!r} must be at least 1")


@dataclass(frozen=True)
class Session:
    chain: FundamentalChain
    schema: DerivationSchema
    budgets: Budgets = field(default_factory=Budgets)

    def __post_init__(self):
        if self.schema.chain is not self.chain:
            raise ConfigError("the schema must be defined over the session chain")

    @classmethod
    def default(cls) -> "Session":
        chain = log_exp_chain()
        return cls(chain, LogExpChain(chain))

    def with_budgets(self, **changes) -> "Session":
        values = {k: getattr(self.budgets, k) for k in ("invert", "integrate", "probe")}
        values.update({k: v for k, v in changes.items() if v is not None})
        return Session(self.chain, self.schema, Budgets(**values))


def _fractions(text: str) -> list:
    return [Fraction(p.strip()) for p in text.split(",") if p.strip()]


def _bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "yes", "true", "on"):
        return True
    if v in ("0", "no", "false", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def _build_chain(cp: configparser.ConfigParser) -> FundamentalChain:
    sec = cp["chain"] if cp.has_section("chain") else {}
    kind = sec.get("kind", "logexp").strip().lower()
    aliases = {}
    if cp.has_section("aliases"):
        for k, v in cp["aliases"].items():
            aliases[Fraction(k) if "/" in k else int(k)] = v.strip()
    if kind == "logexp":
        if aliases:
            return IntegerChain(pattern="E_{k}", aliases=aliases)
        return log_exp_chain()
    if kind == "finite":
        names = [n.strip() for n in sec.get("names", "").split(",") if n.strip()]
        return FiniteChain(tuple(names), shifted=_bool(sec.get("shift", "no")))
    if kind in ("integer", "rational"):
        cls = IntegerChain if kind == "integer" else RationalChain
        conv = int if kind == "integer" else Fraction
        pattern = sec.get("pattern", "E_{k}" if kind == "integer" else "phi_{k}")
        least = sec.get("min")
        shift = sec.get("shift")
        return cls(pattern=pattern, aliases=aliases,
                   min_index=conv(least) if least not in (None, "") else None,
                   shift_step=conv(shift) if shift not in (None, "") else None)
    raise ConfigError(f"unknown chain kind {kind!r}")


def _parse_terms(text: str) -> list:
    """``t: e0 e1 ...`` entries separated by ``|``."""
    out = []
    for part in text.split("|"):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ConfigError(f"general schema term {part!r} must look like 't: e0 e1 ...'")
        t, tau = part.split(":", 1)
        out.append((Fraction(t.strip()), tuple(Fraction(e) for e in tau.split())))
    return out


def _build_schema(cp: configparser.ConfigParser, chain: FundamentalChain) -> DerivationSchema:
    sec = cp["schema"] if cp.has_section("schema") else {}
    kind = sec.get("kind", "logexp").strip().lower()
    t_text = sec.get("t", "1").strip()
    if kind == "logexp":
        if not isinstance(chain, IntegerChain):
            raise ConfigError("logexp schema needs an integer chain")
        return LogExpChain(chain)
    if kind == "table":
        if not cp.has_section("table"):
            raise ConfigError("table schema needs a [table] section")
        return ExplicitTable(chain, {k: parse_series(v, chain) for k, v in cp["table"].items()})
    if kind == "shift":
        return ShiftMonomial(chain, _fractions(sec.get("exponents", "1")), Fraction(t_text),
                             repeat=_bool(sec.get("repeat", "no")), cap=int(sec.get("cap", "8")))
    if kind == "power":
        t = "index" if t_text == "index" else Fraction(t_text)
        return RealIndexedPower(chain, Fraction(sec.get("beta", "-1")), t)
    if kind == "general":
        gamma = parse_monomial(sec.get("gamma", "1"), chain)
        return GeneralShift(chain, gamma, _parse_terms(sec.get("terms", "")))
    if kind == "offset":
        return IndexOffset(chain, int(sec.get("offset", "1")), Fraction(sec.get("exponent", "1")),
                           Fraction(t_text))
    raise ConfigError(f"unknown schema kind {kind!r}")


def parse_config(text: str) -> Session:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
        chain = _build_chain(cp)
        schema = _build_schema(cp, chain)
        b = cp["budgets"] if cp.has_section("budgets") else {}
        budgets = Budgets(int(b.get("invert", 8)), int(b.get("integrate", 8)), int(b.get("probe", 16)))
        return Session(chain, schema, budgets)
    except ConfigError:
        raise
    except (configparser.Error, ValueError, ZeroDivisionError, HahnError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from None


def load_session(path: Optional[str]) -> Session:
    if path is None:
        return Session.default()
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
