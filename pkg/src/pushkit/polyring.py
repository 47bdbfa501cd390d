"""Exact sparse multivariate polynomial arithmetic over the rationals.

Generators are registered in a :class:`VariableTable` together with a
positive integer degree (complex-degree convention: a class of topological
degree ``2k`` has degree ``k`` here).  Polynomials are sparse maps from
monomials to nonzero :class:`fractions.Fraction` coefficients, kept in
canonical form, so equality is structural equality.  Arithmetic is exact;
floats are rejected everywhere.

All values are immutable after construction and all operations are pure
functions of their inputs, so they are safe to share between threads.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction

from .errors import (
    GradingError,
    NotDivisibleError,
    NotInvertibleError,
    TableMismatchError,
    UnboundVariableError,
)

__all__ = [
    "VariableTable",
    "Monomial",
    "Polynomial",
    "divide_exact_linear",
    "series_inverse",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_coeff(value) -> Fraction:
    """Coerce an exact scalar; floats are rejected so nothing is rounded."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class VariableTable:
    """Ordered, immutable registry of generators and their degrees.

    Names must be unique and degrees positive integers.  The registration
    order fixes the lexicographic part of the graded-lex term order used for
    canonical printing.
    """

    __slots__ = ("_names", "_degrees", "_index")

    def __init__(self, entries: Iterable[tuple[str, int]]):
        names: list[str] = []
        degrees: list[int] = []
        index: dict[str, int] = {}
        for name, degree in entries:
            if not isinstance(name, str) or not name:
                raise ValueError("generator names must be non-empty strings")
            if name in index:
                raise ValueError(f"duplicate generator {name!r}")
            if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
                raise ValueError(f"degree of {name!r} must be a positive integer")
            index[name] = len(names)
            names.append(name)
            degrees.append(degree)
        self._names = tuple(names)
        self._degrees = tuple(degrees)
        self._index = index

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnboundVariableError(f"{name!r} is not a generator of this table") from None

    def degree_of(self, name: str) -> int:
        return self._degrees[self.index(name)]

    def var(self, name: str) -> Polynomial:
        """The generator ``name`` as a polynomial."""
        i = self.index(name)
        return Polynomial._raw(self, {Monomial(((i, 1),)): _ONE})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(name) for name in self._names)

    def const(self, value) -> Polynomial:
        c = _as_coeff(value)
        if not c:
            return Polynomial._raw(self, {})
        return Polynomial._raw(self, {_MONOMIAL_ONE: c})

    def zero(self) -> Polynomial:
        return Polynomial._raw(self, {})

    def one(self) -> Polynomial:
        return Polynomial._raw(self, {_MONOMIAL_ONE: _ONE})

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, VariableTable):
            return NotImplemented
        return self._names == other._names and self._degrees == other._degrees

    def __hash__(self) -> int:
        return hash((self._names, self._degrees))

    def __repr__(self) -> str:
        body = ", ".join(f"{n}:{d}" for n, d in zip(self._names, self._degrees))
        return f"VariableTable({body})"


class Monomial:
    """Sparse exponent vector; keys are indices into a variable table.

    Zero exponents are never stored, so two equal monomials always have
    identical representations.
    """

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        cleaned = []
        for idx, exp in items:
            if not isinstance(idx, int) or not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError("monomial entries must be (index, exponent) pairs of ints")
            if idx < 0:
                raise ValueError("variable indices must be non-negative")
            if exp < 0:
                raise ValueError("exponents must be non-negative")
            if exp:
                cleaned.append((idx, exp))
        cleaned.sort()
        self.exps = tuple(cleaned)
        self._hash = hash(self.exps)

    @classmethod
    def _raw(cls, exps: tuple[tuple[int, int], ...]) -> Monomial:
        """Wrap an already-sorted, zero-free exponent tuple without validating."""
        m = object.__new__(cls)
        m.exps = exps
        m._hash = hash(exps)
        return m

    @property
    def is_constant(self) -> bool:
        return not self.exps

    def exponent(self, idx: int) -> int:
        for i, e in self.exps:
            if i == idx:
                return e
        return 0

    def without(self, idx: int) -> Monomial:
        """Copy with the exponent of ``idx`` removed."""
        return Monomial._raw(tuple((i, e) for i, e in self.exps if i != idx))

    def times_var(self, idx: int, exp: int) -> Monomial:
        """Copy with ``exp`` added to the exponent of ``idx``."""
        if exp == 0:
            return self
        merged = dict(self.exps)
        merged[idx] = merged.get(idx, 0) + exp
        return Monomial._raw(tuple(sorted(merged.items())))

    def __mul__(self, other: Monomial) -> Monomial:
        if not other.exps:
            return self
        if not self.exps:
            return other
        merged = dict(self.exps)
        for i, e in other.exps:
            merged[i] = merged.get(i, 0) + e
        return Monomial._raw(tuple(sorted(merged.items())))

    def degree(self, table: VariableTable) -> int:
        degs = table.degrees
        return sum(e * degs[i] for i, e in self.exps)

    def dense(self, nvars: int) -> tuple[int, ...]:
        out = [0] * nvars
        for i, e in self.exps:
            out[i] = e
        return tuple(out)

    def sort_key(self, table: VariableTable) -> tuple[int, tuple[int, ...]]:
        """Graded-lex key: total degree first, then the dense exponent vector."""
        return (self.degree(table), self.dense(len(table)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.exps:
            return "Monomial(1)"
        body = " ".join(f"#{i}^{e}" for i, e in self.exps)
        return f"Monomial({body})"


_MONOMIAL_ONE = Monomial(())


class Polynomial:
    """Sparse polynomial over a :class:`VariableTable` with Fraction coefficients.

    Canonical form: no zero coefficients are stored, so ``==`` is exact
    mathematical equality.  Supports ``+ - * **`` with other polynomials over
    the same table and with exact scalars (int, Fraction).
    """

    __slots__ = ("table", "_terms", "_degree")

    def __init__(self, table: VariableTable, terms: Mapping[Monomial, object] | None = None):
        cleaned: dict[Monomial, Fraction] = {}
        if terms:
            n = len(table)
            for mon, coeff in terms.items():
                if not isinstance(mon, Monomial):
                    raise TypeError("term keys must be Monomial instances")
                if mon.exps and mon.exps[-1][0] >= n:
                    raise ValueError("monomial references a generator outside the table")
                c = _as_coeff(coeff)
                if c:
                    cleaned[mon] = c
        self.table = table
        self._terms = cleaned
        self._degree: int | None = None

    @classmethod
    def _raw(cls, table: VariableTable, terms: dict[Monomial, Fraction]) -> Polynomial:
        """Wrap an already-canonical term dict without re-validating it."""
        p = object.__new__(cls)
        p.table = table
        p._terms = terms
        p._degree = None
        return p

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(_MONOMIAL_ONE, _ZERO)

    def coefficient(self, mon: Monomial) -> Fraction:
        return self._terms.get(mon, _ZERO)

    def degree(self) -> int:
        """Largest weighted total degree of a term; -1 for the zero polynomial."""
        if self._degree is None:
            table = self.table
            self._degree = max(
                (mon.degree(table) for mon in self._terms), default=-1
            )
        return self._degree

    def variables(self) -> tuple[str, ...]:
        """Names of the generators that actually occur, in table order."""
        seen: set[int] = set()
        for mon in self._terms:
            for i, _ in mon.exps:
                seen.add(i)
        names = self.table.names
        return tuple(names[i] for i in sorted(seen))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing graded-lex order (the canonical print order)."""
        table = self.table
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key(table), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        """The graded-lex largest term; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        table = self.table
        mon = max(self._terms, key=lambda m: m.sort_key(table))
        return mon, self._terms[mon]

    def is_homogeneous_of_degree(self, degree: int) -> bool:
        """True if every term has the given degree (vacuously true for zero)."""
        table = self.table
        return all(mon.degree(table) == degree for mon in self._terms)

    # -- arithmetic --------------------------------------------------------

    def _check_table(self, other: Polynomial) -> None:
        if self.table is not other.table and self.table != other.table:
            raise TableMismatchError("polynomials use different variable tables")

    def _coerce(self, value) -> Polynomial | None:
        if isinstance(value, Polynomial):
            self._check_table(value)
            return value
        try:
            return self.table.const(value)
        except TypeError:
            return None

    def __add__(self, other) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for mon, c in rhs._terms.items():
            s = out.get(mon, _ZERO) + c
            if s:
                out[mon] = s
            elif mon in out:
                del out[mon]
        return Polynomial._raw(self.table, out)

    __radd__ = __add__

    def __sub__(self, other) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for mon, c in rhs._terms.items():
            s = out.get(mon, _ZERO) - c
            if s:
                out[mon] = s
            elif mon in out:
                del out[mon]
        return Polynomial._raw(self.table, out)

    def __rsub__(self, other) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs - self

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.table, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._mul(rhs, None)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            raise TypeError(
                "polynomial division is not defined; use divide_exact_linear or series_inverse"
            )
        c = _as_coeff(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def _mul(self, other: Polynomial, cutoff: int | None) -> Polynomial:
        if not self._terms or not other._terms:
            return Polynomial._raw(self.table, {})
        out: dict[Monomial, Fraction] = {}
        if cutoff is None:
            for ma, ca in self._terms.items():
                for mb, cb in other._terms.items():
                    mon = ma * mb
                    s = out.get(mon, _ZERO) + ca * cb
                    if s:
                        out[mon] = s
                    elif mon in out:
                        del out[mon]
        else:
            table = self.table
            left = [(m, m.degree(table), c) for m, c in self._terms.items()]
            right = [(m, m.degree(table), c) for m, c in other._terms.items()]
            for ma, da, ca in left:
                for mb, db, cb in right:
                    if da + db > cutoff:
                        continue
                    mon = ma * mb
                    s = out.get(mon, _ZERO) + ca * cb
                    if s:
                        out[mon] = s
                    elif mon in out:
                        del out[mon]
        return Polynomial._raw(self.table, out)

    def mul_trunc(self, other: Polynomial, cutoff: int) -> Polynomial:
        """Product with every term of degree above ``cutoff`` dropped."""
        rhs = self._coerce(other)
        if rhs is None:
            raise TypeError("mul_trunc expects a polynomial or exact scalar")
        return self._mul(rhs, cutoff)

    def pow(self, exponent: int, cutoff: int | None = None) -> Polynomial:
        """``self ** exponent``, optionally truncating at ``cutoff`` throughout."""
        if not isinstance(exponent, int) or isinstance(exponent, bool) or exponent < 0:
            raise ValueError("exponents must be non-negative integers")
        result = self.table.one()
        base = self if cutoff is None else self.truncate(cutoff)
        n = exponent
        while n:
            if n & 1:
                result = result._mul(base, cutoff)
            n >>= 1
            if n:
                base = base._mul(base, cutoff)
        return result

    def __pow__(self, exponent: int) -> Polynomial:
        return self.pow(exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            if self.table is not other.table and self.table != other.table:
                return False
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == self.table.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self._terms.items())))

    # -- grading -----------------------------------------------------------

    def truncate(self, cutoff: int) -> Polynomial:
        """Drop every term of weighted degree above ``cutoff``."""
        if not isinstance(cutoff, int) or isinstance(cutoff, bool):
            raise TypeError("cutoff must be an integer")
        if self.degree() <= cutoff:
            return self
        table = self.table
        kept = {m: c for m, c in self._terms.items() if m.degree(table) <= cutoff}
        return Polynomial._raw(table, kept)

    def graded_parts(self) -> list[tuple[int, Polynomial]]:
        """Homogeneous components as ``(degree, part)`` in increasing degree."""
        table = self.table
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for mon, c in self._terms.items():
            buckets.setdefault(mon.degree(table), {})[mon] = c
        return [
            (d, Polynomial._raw(table, terms)) for d, terms in sorted(buckets.items())
        ]

    def homogeneous_component(self, degree: int) -> Polynomial:
        table = self.table
        kept = {m: c for m, c in self._terms.items() if m.degree(table) == degree}
        return Polynomial._raw(table, kept)

    # -- substitution ------------------------------------------------------

    def substitute(self, images: Mapping[str, Polynomial]) -> Polynomial:
        """Apply the ring homomorphism sending each generator to its image.

        Every generator occurring in the polynomial must have an image; all
        images must live in one target table; each image must be homogeneous
        of the degree of the variable it replaces, so grading is preserved.
        """
        table = self.table
        target: VariableTable | None = None
        for name, img in images.items():
            if name not in table:
                raise UnboundVariableError(f"{name!r} is not a generator of this table")
            if not isinstance(img, Polynomial):
                raise TypeError("substitution images must be polynomials")
            if target is None:
                target = img.table
            elif target is not img.table and target != img.table:
                raise TableMismatchError("substitution images use different tables")
        if target is None:
            target = table

        occurring = sorted({i for mon in self._terms for i, _ in mon.exps})
        img_by_idx: dict[int, Polynomial] = {}
        for i in occurring:
            name = table.names[i]
            if name not in images:
                raise UnboundVariableError(f"no image for {name!r}")
            img = images[name]
            want = table.degrees[i]
            if not img.is_homogeneous_of_degree(want):
                raise GradingError(f"image of {name!r} must be homogeneous of degree {want}")
            img_by_idx[i] = img

        powers: dict[int, list[Polynomial]] = {i: [target.one()] for i in img_by_idx}

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * img_by_idx[i])
            return cache[e]

        out: dict[Monomial, Fraction] = {}
        for mon, coeff in self._terms.items():
            prod = target.const(coeff)
            for i, e in mon.exps:
                prod = prod * power(i, e)
            for m, c in prod._terms.items():
                s = out.get(m, _ZERO) + c
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Polynomial._raw(target, out)

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text: decreasing graded-lex terms, reduced fractions,
        ``^`` for powers, multiplication by juxtaposition."""
        if not self._terms:
            return "0"
        names = self.table.names
        pieces: list[str] = []
        for k, (mon, coeff) in enumerate(self.sorted_terms()):
            neg = coeff < 0
            mag = -coeff if neg else coeff
            factors: list[str] = []
            if mon.is_constant or mag != 1:
                factors.append(str(mag))
            for i, e in mon.exps:
                factors.append(names[i] if e == 1 else f"{names[i]}^{e}")
            body = " ".join(factors)
            if k == 0:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()})"


def divide_exact_linear(p: Polynomial, factor: Polynomial) -> Polynomial:
    """Divide ``p`` exactly by a factor of the form ``a - b`` for distinct
    degree-1 generators ``a`` and ``b``.

    Runs synthetic division treating ``p`` as univariate in ``a`` with
    polynomial coefficients.  Raises :class:`NotDivisibleError` when the
    remainder is nonzero, which signals a violated invariant upstream.
    """
    p._check_table(factor)
    table = p.table
    pos = neg = None
    if len(factor._terms) != 2:
        raise ValueError("factor must be a difference of two generators")
    for mon, coeff in factor._terms.items():
        if len(mon.exps) != 1 or mon.exps[0][1] != 1:
            raise ValueError("factor must be a difference of two generators")
        idx = mon.exps[0][0]
        if table.degrees[idx] != 1:
            raise ValueError("factor generators must have degree 1")
        if coeff == 1:
            pos = idx
        elif coeff == -1:
            neg = idx
        else:
            raise ValueError("factor coefficients must be +1 and -1")
    if pos is None or neg is None or pos == neg:
        raise ValueError("factor must be a difference of two distinct generators")

    a, b = pos, neg
    buckets: dict[int, dict[Monomial, Fraction]] = {}
    for mon, coeff in p._terms.items():
        e = mon.exponent(a)
        buckets.setdefault(e, {})[mon.without(a)] = coeff

    top = max(buckets, default=0)
    carry: dict[Monomial, Fraction] = {}
    quotient: dict[Monomial, Fraction] = {}
    for k in range(top, 0, -1):
        cur = dict(buckets.get(k, {}))
        for mon, c in carry.items():
            s = cur.get(mon, _ZERO) + c
            if s:
                cur[mon] = s
            elif mon in cur:
                del cur[mon]
        for mon, c in cur.items():
            quotient[mon.times_var(a, k - 1)] = c
        carry = {mon.times_var(b, 1): c for mon, c in cur.items()}

    remainder = dict(buckets.get(0, {}))
    for mon, c in carry.items():
        s = remainder.get(mon, _ZERO) + c
        if s:
            remainder[mon] = s
        elif mon in remainder:
            del remainder[mon]
    if remainder:
        raise NotDivisibleError(
            f"{table.names[a]} - {table.names[b]} does not divide the given polynomial"
        )
    return Polynomial._raw(table, quotient)


def series_inverse(p: Polynomial, cutoff: int) -> Polynomial:
    """Multiplicative inverse of ``p`` as a series, truncated at ``cutoff``.

    The constant term must be a nonzero rational.  The result ``s`` satisfies
    ``(p * s).truncate(cutoff) == 1``.
    """
    if not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 0:
        raise ValueError("cutoff must be a non-negative integer")
    c0 = p.constant_term()
    if not c0:
        raise NotInvertibleError("cannot invert a series with zero constant term")
    # p / c0 = 1 - g with g of positive minimal degree; invert geometrically.
    g = p.table.one() - p.truncate(cutoff) / c0
    acc = p.table.one()
    pw = p.table.one()
    for _ in range(cutoff):
        pw = pw._mul(g, cutoff)
        if pw.is_zero():
            break
        acc = acc + pw
    return acc / c0
