"""Torus fixed-point data and the localization pushforward for a
projective-space fiber of rank r (fiber dimension r - 1).

The fiber ring has generators x and y (opposite first Chern classes of the
tautological line and its dual), the quotient-bundle classes q1..q(r-1), the
base Chern classes c1..cr, and the Chern roots u1..ur.  The torus action on
the fiber has r isolated fixed points; at the j-th one, y restricts to u_j
and the normal bundle has equivariant Euler class prod_{i != j} (u_i - u_j).

The pushforward is evaluated as the exact sum over fixed points of
(restriction / Euler class), organized over the fixed Vandermonde
denominator so that only exact division by linear factors is ever needed.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .errors import (
    LocalizationIntegralityError,
    NotDivisibleError,
    SymmetryError,
    TableMismatchError,
)
from .polyring import Polynomial, VariableTable, divide_exact_linear
from .symfun import elementary_symmetric, is_symmetric, root_generators

__all__ = [
    "bundle_ring",
    "FixedPointChart",
    "LocalizationResult",
    "fixed_point_charts",
    "localize",
    "localize_pairwise",
    "relation_check",
]


@lru_cache(maxsize=None)
def bundle_ring(rank: int) -> VariableTable:
    """The working ring for a rank-``rank`` projective bundle.

    Generators, with complex degrees: x, y (degree 1), q1..q(rank-1)
    (degree i), c1..c(rank) (degree i), u1..u(rank) (degree 1).
    """
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ValueError("rank must be a positive integer")
    entries: list[tuple[str, int]] = [("x", 1), ("y", 1)]
    entries += [(f"q{i}", i) for i in range(1, rank)]
    entries += [(f"c{i}", i) for i in range(1, rank + 1)]
    entries += [(f"u{i}", 1) for i in range(1, rank + 1)]
    return VariableTable(entries)


@dataclass(frozen=True)
class FixedPointChart:
    """Per-fixed-point substitution data.

    ``restriction`` maps every generator to its value at the fixed point
    p_index; ``euler`` is the equivariant Euler class of the normal bundle,
    the product of the name pairs listed in ``euler_factors``.
    """

    index: int
    restriction: Mapping[str, Polynomial]
    euler: Polynomial
    euler_factors: tuple[tuple[str, str], ...]

    def restrict(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.restriction)


@lru_cache(maxsize=None)
def _charts(rank: int) -> tuple[FixedPointChart, ...]:
    table = bundle_ring(rank)
    roots = root_generators(table)
    total = [elementary_symmetric(i, roots) for i in range(rank + 1)]
    charts = []
    for j in range(1, rank + 1):
        complement = tuple(roots[i] for i in range(rank) if i != j - 1)
        mapping: dict[str, Polynomial] = {
            "x": -roots[j - 1],
            "y": roots[j - 1],
        }
        for i in range(1, rank):
            mapping[f"q{i}"] = elementary_symmetric(i, complement, table=table)
        for i in range(1, rank + 1):
            mapping[f"c{i}"] = total[i]
        for i in range(1, rank + 1):
            mapping[f"u{i}"] = roots[i - 1]
        euler = table.one()
        factors = []
        for i in range(1, rank + 1):
            if i != j:
                euler = euler * (roots[i - 1] - roots[j - 1])
                factors.append((f"u{i}", f"u{j}"))
        charts.append(
            FixedPointChart(
                index=j,
                restriction=mapping,
                euler=euler,
                euler_factors=tuple(factors),
            )
        )
    return tuple(charts)


def fixed_point_charts(rank: int) -> list[FixedPointChart]:
    """The ``rank`` fixed-point charts, indexed 1..rank."""
    return list(_charts(rank))


@lru_cache(maxsize=None)
def _vandermonde(rank: int) -> tuple[Polynomial, tuple[tuple[str, str], ...]]:
    """prod_{a<b} (u_a - u_b) and the list of its linear factors."""
    table = bundle_ring(rank)
    roots = root_generators(table)
    product = table.one()
    factors = []
    for a in range(1, rank + 1):
        for b in range(a + 1, rank + 1):
            product = product * (roots[a - 1] - roots[b - 1])
            factors.append((f"u{a}", f"u{b}"))
    return product, tuple(factors)


@lru_cache(maxsize=None)
def _cofactors(rank: int) -> tuple[Polynomial, ...]:
    """Per chart, the Vandermonde divided exactly by that chart's Euler class.

    Each division is by one linear factor at a time; sign bookkeeping falls
    out of the exact division rather than any parity formula.
    """
    table = bundle_ring(rank)
    vandermonde, _ = _vandermonde(rank)
    out = []
    for chart in _charts(rank):
        cof = vandermonde
        for a, b in chart.euler_factors:
            cof = divide_exact_linear(cof, table.var(a) - table.var(b))
        out.append(cof)
    return tuple(out)


@dataclass(frozen=True)
class LocalizationResult:
    """The fixed-point sum, with the degree bound through which it is exact.

    ``valid_through`` is None when the input was an exact polynomial rather
    than a truncated series.
    """

    value: Polynomial
    valid_through: int | None


def _worker_count() -> int:
    raw = os.environ.get("PUSHKIT_THREADS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def localize(phi: Polynomial, rank: int, cutoff: int | None = None) -> LocalizationResult:
    """Sum of restriction/Euler over the fixed points, computed exactly.

    ``phi`` lives in ``bundle_ring(rank)``; series inputs must already be
    truncated at ``cutoff``.  The result is exact through
    ``cutoff - (rank - 1)`` and is truncated there; it must be invariant
    under permuting the roots, which is asserted.
    """
    table = bundle_ring(rank)
    if phi.table is not table and phi.table != table:
        raise TableMismatchError("phi must live in bundle_ring(rank)")
    if cutoff is not None:
        if not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 0:
            raise ValueError("cutoff must be a non-negative integer or None")
        if phi.degree() > cutoff:
            raise ValueError("series input must be pre-truncated at the cutoff")

    charts = _charts(rank)
    cofactors = _cofactors(rank)
    _, factors = _vandermonde(rank)

    def chart_term(pair: tuple[FixedPointChart, Polynomial]) -> Polynomial:
        chart, cofactor = pair
        return chart.restrict(phi) * cofactor

    workers = _worker_count()
    pairs = list(zip(charts, cofactors))
    if workers > 1 and rank > 1:
        with ThreadPoolExecutor(max_workers=min(workers, rank)) as pool:
            terms = list(pool.map(chart_term, pairs))
    else:
        terms = [chart_term(pair) for pair in pairs]

    numerator = table.zero()
    for t in terms:
        numerator = numerator + t

    value = numerator
    try:
        for a, b in factors:
            value = divide_exact_linear(value, table.var(a) - table.var(b))
    except NotDivisibleError as exc:
        raise LocalizationIntegralityError(
            f"fixed-point sum did not reduce to a polynomial: {exc}"
        ) from exc

    valid_through: int | None = None
    if cutoff is not None:
        valid_through = cutoff - (rank - 1)
        value = value.truncate(valid_through)
    if not is_symmetric(value):
        raise SymmetryError("localization result is not invariant under permuting the roots")
    return LocalizationResult(value=value, valid_through=valid_through)


def localize_pairwise(phi: Polynomial, rank: int) -> Polynomial:
    """Reference evaluation of the fixed-point sum for exact polynomial input.

    Adds the per-point fractions two at a time over pairwise common
    denominators, then divides once by the accumulated denominator, factor by
    factor.  Shares no denominator bookkeeping with :func:`localize`, so the
    two routes cross-check each other.
    """
    table = bundle_ring(rank)
    if phi.table is not table and phi.table != table:
        raise TableMismatchError("phi must live in bundle_ring(rank)")
    charts = _charts(rank)
    numerator = charts[0].restrict(phi)
    denominator = charts[0].euler
    factors = list(charts[0].euler_factors)
    for chart in charts[1:]:
        numerator = numerator * chart.euler + chart.restrict(phi) * denominator
        denominator = denominator * chart.euler
        factors.extend(chart.euler_factors)
    value = numerator
    for a, b in factors:
        value = divide_exact_linear(value, table.var(a) - table.var(b))
    return value


def relation_check(rank: int) -> bool:
    """True when the defining relation of the fiber ring restricts to a true
    identity at every fixed point: (1 + u_j) * (1 + sum of complementary
    elementary symmetric polynomials) equals prod_i (1 + u_i), exactly."""
    table = bundle_ring(rank)
    roots = root_generators(table)
    rhs = table.one()
    for u in roots:
        rhs = rhs * (1 + u)
    lhs_class = table.one() + table.var("y")
    q_total = table.one()
    for i in range(1, rank):
        q_total = q_total + table.var(f"q{i}")
    lhs_class = lhs_class * q_total
    return all(chart.restrict(lhs_class) == rhs for chart in _charts(rank))
