"""Seeded random monomials and series for property checks."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .monomial import Monomial
from .series import Series

def rng(seed) -> random.Random:
    return random.Random(seed)


def random_rational(r: random.Random, bound: int = 5, denominators: Sequence[int] = (1, 2, 3)) -> Fraction:
    d = r.choice(denominators)
    return Fraction(r.randint(-bound * d, bound * d), d)


def random_monomial(r: random.Random, keys: Sequence, max_support: int = 3, bound: int = 5,
                    denominators: Sequence[int] = (1, 2, 3), allow_one: bool = True) -> Monomial:
    """Monomial over ``keys`` with exponents in ``[-bound, bound]``."""
    while True:
        size = r.randint(0 if allow_one else 1, min(max_support, len(keys)))
        exps = {k: random_rational(r, bound, denominators) for k in r.sample(list(keys), size)}
        m = Monomial(exps)
        if allow_one or not m.is_one():
            return m


def random_series(r: random.Random, keys: Sequence, max_terms: int = 4, max_support: int = 3,
                  bound: int = 5, coeff_bound: int = 9, allow_zero: bool = True) -> Series:
    """Series with up to ``max_terms`` terms and small rational coefficients."""
    while True:
        n = r.randint(0 if allow_zero else 1, max_terms)
        terms = []
        for _ in range(n):
            c = Fraction(r.randint(-coeff_bound, coeff_bound), r.randint(1, 4))
            terms.append((c, random_monomial(r, keys, max_support, bound)))
        s = Series(terms)
        if allow_zero or not s.is_zero():
            return s
