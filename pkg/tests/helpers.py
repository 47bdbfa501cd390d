"""Shared random generators for the test suite (seeded, deterministic)."""

from __future__ import annotations

import random
from fractions import Fraction

from pushkit import Monomial, Polynomial, VariableTable, bundle_ring


def random_coeff(rng: random.Random) -> Fraction:
    num = rng.randint(-6, 6)
    if num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 4))


def random_poly(
    rng: random.Random,
    table: VariableTable,
    names: list[str],
    max_terms: int = 4,
    max_exp: int = 3,
    max_vars_per_term: int = 3,
) -> Polynomial:
    """Random sparse polynomial supported on the given generators."""
    terms: dict[Monomial, Fraction] = {}
    for _ in range(rng.randint(0, max_terms)):
        exps: dict[int, int] = {}
        for _ in range(rng.randint(0, max_vars_per_term)):
            idx = table.index(rng.choice(names))
            exps[idx] = exps.get(idx, 0) + rng.randint(1, max_exp)
        mon = Monomial(exps)
        terms[mon] = terms.get(mon, Fraction(0)) + random_coeff(rng)
    return Polynomial(table, terms)


def random_x_class(rng: random.Random, rank: int, max_x_degree: int = 8) -> Polynomial:
    """Random polynomial in x with Chern-class coefficients at the given rank."""
    table = bundle_ring(rank)
    x = table.var("x")
    p = table.zero()
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(0, max_x_degree)
        coeff = table.const(random_coeff(rng))
        for _ in range(rng.randint(0, 2)):
            coeff = coeff * table.var(f"c{rng.randint(1, rank)}")
        p = p + coeff * x.pow(k)
    return p


def random_chern_poly(rng: random.Random, rank: int, max_terms: int = 4) -> Polynomial:
    """Random polynomial in c1..cr (a random symmetric class, once expanded)."""
    table = bundle_ring(rank)
    names = [f"c{i}" for i in range(1, rank + 1)]
    return random_poly(rng, table, names, max_terms=max_terms, max_exp=2, max_vars_per_term=2)


def random_fiber_poly(rng: random.Random, rank: int, max_terms: int = 4) -> Polynomial:
    """Random polynomial in the fiber generators y, q_i, c_i (no x, no roots)."""
    table = bundle_ring(rank)
    names = ["y"] + [f"q{i}" for i in range(1, rank)] + [f"c{i}" for i in range(1, rank + 1)]
    return random_poly(rng, table, names, max_terms=max_terms, max_exp=2, max_vars_per_term=3)
