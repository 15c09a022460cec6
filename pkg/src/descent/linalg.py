"""Exact linear algebra over the rationals.

Everything here runs on plain ``fractions.Fraction`` values, so ranks,
spans and polynomial manipulations are never subject to rounding.  The
vectors involved are short (``2**rank`` coordinates for algebra elements,
group order only in a few brute-force checks), which keeps dense row
reduction comfortably fast.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fractions(vec: Sequence) -> list[Fraction]:
    """Copy a sequence of numbers into a list of Fractions."""
    return [x if isinstance(x, Fraction) else Fraction(x) for x in vec]


class Span:
    """A subspace maintained as a reduced row echelon basis.

    Rows are pivot-normalized to 1 and eliminated both above and below,
    so the stored rows are a canonical basis of the row space.  That makes
    membership tests and equality comparisons cheap.
    """

    __slots__ = ("width", "rows", "pivots")

    def __init__(self, width: int, rows: Iterable[Sequence] | None = None):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        if rows is not None:
            for row in rows:
                self.add(row)

    def _residual(self, vec: Sequence) -> list[Fraction]:
        """Eliminate ``vec`` against the stored rows and return what is left."""
        v = as_fractions(vec)
        if len(v) != self.width:
            raise ValueError("vector width %d, expected %d" % (len(v), self.width))
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.width):
                    v[j] -= c * row[j]
        return v

    def add(self, vec: Sequence) -> bool:
        """Insert a vector; report whether the dimension grew."""
        v = self._residual(vec)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = ONE / v[p]
        for j in range(p, self.width):
            v[j] *= inv
        # clear the new pivot column in the existing rows
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(p, self.width):
                    row[j] -= c * v[j]
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, p)
        return True

    def extend(self, vecs: Iterable[Sequence]) -> None:
        for vec in vecs:
            self.add(vec)

    def contains(self, vec: Sequence) -> bool:
        return all(x == 0 for x in self._residual(vec))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[tuple[Fraction, ...]]:
        return [tuple(row) for row in self.rows]

    def canonical(self) -> tuple[tuple[Fraction, ...], ...]:
        """Canonical form of the row space; equal iff the spaces are equal."""
        return tuple(tuple(row) for row in self.rows)

    def copy(self) -> "Span":
        out = Span(self.width)
        out.rows = [row[:] for row in self.rows]
        out.pivots = self.pivots[:]
        return out

    def sum(self, other: "Span") -> "Span":
        if other.width != self.width:
            raise ValueError("width mismatch")
        out = self.copy()
        for row in other.rows:
            out.add(row)
        return out

    def intersection_dim(self, other: "Span") -> int:
        return self.dim + other.dim - self.sum(other).dim

    def equals(self, other: "Span") -> bool:
        return self.width == other.width and self.canonical() == other.canonical()


class AugSpan:
    """Echelon basis that remembers how each row was built.

    Every inserted vector gets an expression vector alongside it, so once a
    new vector turns out to be dependent we can read off the exact linear
    combination of previously added vectors that produces it.  This is what
    drives minimal polynomial extraction.
    """

    __slots__ = ("width", "rows", "pivots", "exprs", "count")

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        self.exprs: list[dict[int, Fraction]] = []
        self.count = 0

    def _residual(self, vec: Sequence):
        v = as_fractions(vec)
        if len(v) != self.width:
            raise ValueError("vector width %d, expected %d" % (len(v), self.width))
        expr: dict[int, Fraction] = {}
        for row, p, e in zip(self.rows, self.pivots, self.exprs):
            c = v[p]
            if c:
                for j in range(p, self.width):
                    v[j] -= c * row[j]
                for k, val in e.items():
                    expr[k] = expr.get(k, ZERO) - c * val
        return v, expr

    def express(self, vec: Sequence) -> dict[int, Fraction] | None:
        """Write ``vec`` over the added vectors, or return None if outside."""
        v, expr = self._residual(vec)
        if any(x for x in v):
            return None
        return {k: -val for k, val in expr.items() if val}

    def add(self, vec: Sequence) -> bool:
        v, expr = self._residual(vec)
        idx = self.count
        self.count += 1
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        expr[idx] = ONE
        inv = ONE / v[p]
        for j in range(p, self.width):
            v[j] *= inv
        expr = {k: val * inv for k, val in expr.items() if val}
        for row, e in zip(self.rows, self.exprs):
            c = row[p]
            if c:
                for j in range(p, self.width):
                    row[j] -= c * v[j]
                for k, val in expr.items():
                    e[k] = e.get(k, ZERO) - c * val
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, p)
        self.exprs.insert(at, expr)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def rref(rows: Iterable[Sequence], width: int) -> list[tuple[Fraction, ...]]:
    """Reduced row echelon form with zero rows dropped."""
    span = Span(width, rows)
    return span.basis()


def rank(rows: Iterable[Sequence], width: int) -> int:
    return Span(width, rows).dim


def nullspace(rows: Iterable[Sequence], width: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel: all v with row . v = 0 for every row."""
    span = Span(width, rows)
    pivot_set = set(span.pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = [ZERO] * width
        v[free] = ONE
        for row, p in zip(span.rows, span.pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence], target: Sequence, width: int):
    """Coefficients c with sum(c[i] * rows[i]) == target, or None."""
    aug = AugSpan(width)
    for row in rows:
        aug.add(row)
    expr = aug.express(target)
    if expr is None:
        return None
    out = [ZERO] * len(rows)
    for k, val in expr.items():
        out[k] = val
    return out


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, vec)), ZERO) for row in rows]


# ---------------------------------------------------------------------------
# polynomials over Q, coefficient lists with index = degree


def poly_trim(coeffs: Sequence) -> tuple[Fraction, ...]:
    c = as_fractions(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_degree(p: Sequence) -> int:
    q = poly_trim(p)
    return len(q) - 1 if q else -1


def poly_monic(p: Sequence) -> tuple[Fraction, ...]:
    q = list(poly_trim(p))
    if not q:
        return ()
    lead = q[-1]
    return tuple(x / lead for x in q)


def poly_mul(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    a, b = poly_trim(p), poly_trim(q)
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(p: Sequence, q: Sequence):
    a = list(poly_trim(p))
    b = poly_trim(q)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        quot[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        while a and a[-1] == 0:
            a.pop()
    return poly_trim(quot), poly_trim(a)


def poly_gcd(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_derivative(p: Sequence) -> tuple[Fraction, ...]:
    q = poly_trim(p)
    return poly_trim([i * q[i] for i in range(1, len(q))])


def poly_is_squarefree(p: Sequence) -> bool:
    q = poly_trim(p)
    if poly_degree(q) <= 1:
        return True
    return poly_degree(poly_gcd(q, poly_derivative(q))) == 0


def poly_from_roots(roots: Iterable) -> tuple[Fraction, ...]:
    """Monic polynomial with the given roots, one factor per root."""
    out: tuple[Fraction, ...] = (ONE,)
    for r in roots:
        out = poly_mul(out, (-Fraction(r), ONE))
    return out


def poly_eval(p: Sequence, x) -> Fraction:
    acc = ZERO
    for c in reversed(poly_trim(p)):
        acc = acc * x + c
    return acc
