"""Canonical text form of monomials and series, and its parser.

Grammar (whitespace is ignored between tokens)::

    series  := [sign] term (sign term)*
    term    := factor ('*' factor)*
    factor  := NUMBER | NAME ['^' EXPONENT]
    NUMBER  := digits ['/' digits]
    EXPONENT:= ['-'] digits ['/' digits]

``^`` binds tighter than ``*``, so ``x^1/2`` is ``x`` to the power one half.
The printer writes terms in decreasing monomial order, coefficient first,
and factors ordered by distance from the chain's anchor (``x`` before
``E_-1`` before ``E_1``).
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError, ParseError
from .monomial import FundamentalChain, Monomial, format_rational
from .series import Series

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9]*(?:_(?:-?\d+(?:/\d+)?|[A-Za-z0-9]+))*)
  | (?P<op>[-+*^])
    """,
    re.VERBOSE,
)
_EXPONENT = re.compile(r"-?\d+(?:/\d+)?")


def format_monomial(m: Monomial, chain: FundamentalChain) -> str:
    if m.is_one():
        return "1"
    parts = []
    for k, e in sorted(m.items(), key=lambda kv: chain.display_key(kv[0])):
        name = chain.name(k)
        parts.append(name if e == 1 else f"{name}^{format_rational(e)}")
    return "*".join(parts)


def _format_term(c: Fraction, m: Monomial, chain: FundamentalChain) -> str:
    # c is positive here; the sign is emitted by the caller
    if m.is_one():
        return format_rational(c)
    mono = format_monomial(m, chain)
    if c == 1:
        return mono
    return f"{format_rational(c)}*{mono}"


def format_series(a: Series, chain: FundamentalChain) -> str:
    if a.is_zero():
        return "0"
    out = []
    for i, (c, m) in enumerate(a.terms):
        body = _format_term(abs(c), m, chain)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos, "a term")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, chain: FundamentalChain):
        self.text = text
        self.chain = chain
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {found}", self.text, pos, expected)

    def series(self) -> Series:
        terms = []
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] != "end":
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                terms.append(self.term(-1 if value == "-" else 1))
            else:
                self.fail("'+', '-' or end of input")
        return Series(terms)

    def term(self, sign: int):
        exps: dict = {}
        coeff = [Fraction(sign)]
        self.factor(exps, coeff)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.factor(exps, coeff)
        return coeff[0], Monomial(exps)

    def factor(self, exps: dict, coeff_box: list):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            coeff_box[0] *= Fraction(value)
            return
        if kind != "name":
            self.fail("a number or a fundamental name")
        self.take()
        try:
            key = self.chain.key(value)
        except DomainError as exc:
            raise ParseError(str(exc), self.text, pos, "a fundamental of the chain") from None
        e = Fraction(1)
        if self.peek()[:2] == ("op", "^"):
            self.take()
            e = self.exponent()
        exps[key] = exps.get(key, 0) + e

    def exponent(self) -> Fraction:
        # re-scan raw text: the tokenizer splits "-3" into an operator and a number
        _, _, pos = self.peek()
        m = _EXPONENT.match(self.text, pos)
        if not m:
            self.fail("a rational exponent")
        end = m.end()
        while self.peek()[2] < end:
            self.take()
        return Fraction(m.group())


def parse_series(text: str, chain: FundamentalChain) -> Series:
    """Parse ``text`` into a normalised series over ``chain``."""
    return _Parser(text, chain).series()


def parse_monomial(text: str, chain: FundamentalChain) -> Monomial:
    s = parse_series(text, chain)
    if len(s) != 1 or s.leading_coefficient != 1:
        raise ParseError(f"{text!r} is not a monomial", text, 0, "a monomial")
    return s.leading_monomial
