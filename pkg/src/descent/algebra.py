"""Descent-algebra arithmetic over exact rationals.

A vector is stored by its coordinates on one of three bases, indexed by
generator-subset bitmask: the coset-sum basis x_I, the equal-descent-class
basis y_J, and the signed half-weight basis xp_I. Products are computed from
the integer structure constants of the ambient Coxeter system; an independent
slow path multiplies honest group-algebra vectors and folds the result back.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np

from .coxeter import CoxeterSystem, iter_bits, popcount
from .errors import (
    InvalidSubset,
    NotInDescentAlgebra,
    NotPositive,
    SystemMismatch,
    WrongType,
)
from . import linalg
from .linalg import ONE, ZERO, AugSpan, Span

BASIS_X = "x"
BASIS_Y = "y"
BASIS_XPRIME = "xp"
_TAGS = (BASIS_X, BASIS_Y, BASIS_XPRIME)

_HALF = Fraction(1, 2)
_NEG_HALF = Fraction(-1, 2)


def _as_mask(system, subset):
    """Accept a bitmask or an iterable of generator labels."""
    if isinstance(subset, (int, np.integer)):
        return system.check_mask(int(subset))
    return system.mask_of_labels(subset)


# ---------------------------------------------------------------------------
# coordinate transforms between the three bases (all invertible, per-bit)


def _coords_y_to_x(coeffs, n):
    # y_J = sum over I >= J of (-1)^{|I|-|J|} x_I
    out = list(coeffs)
    for b in range(n):
        bit = 1 << b
        for m in range(1 << n):
            if m & bit:
                out[m] = out[m] - out[m ^ bit]
    return out


def _coords_x_to_y(coeffs, n):
    # x_I = sum over J >= I of y_J, so the y-coordinate at J sums c[I], I <= J
    out = list(coeffs)
    for b in range(n):
        bit = 1 << b
        for m in range(1 << n):
            if m & bit:
                out[m] = out[m] + out[m ^ bit]
    return out


def _coords_xp_to_x(coeffs, n):
    # xp_I = sum over K <= I of (-1/2)^{|I|-|K|} x_K
    out = list(coeffs)
    for b in range(n):
        bit = 1 << b
        for m in range(1 << n):
            if not m & bit:
                out[m] = out[m] + _NEG_HALF * out[m | bit]
    return out


def _coords_x_to_xp(coeffs, n):
    # inverse of the above: x_I = sum over K <= I of (1/2)^{|I|-|K|} xp_K
    out = list(coeffs)
    for b in range(n):
        bit = 1 << b
        for m in range(1 << n):
            if not m & bit:
                out[m] = out[m] + _HALF * out[m | bit]
    return out


def _to_x_coords(coeffs, tag, n):
    if tag == BASIS_X:
        return list(coeffs)
    if tag == BASIS_Y:
        return _coords_y_to_x(coeffs, n)
    return _coords_xp_to_x(coeffs, n)


def _from_x_coords(coeffs, tag, n):
    if tag == BASIS_X:
        return list(coeffs)
    if tag == BASIS_Y:
        return _coords_x_to_y(coeffs, n)
    return _coords_x_to_xp(coeffs, n)


class DescentVector:
    """Immutable element of the descent algebra of one Coxeter system."""

    __slots__ = ("system", "tag", "coeffs")

    def __init__(self, system, coeffs, tag=BASIS_X):
        if tag not in _TAGS:
            raise ValueError("unknown basis tag %r" % (tag,))
        size = 1 << system.rank
        if len(coeffs) != size:
            raise ValueError("expected %d coordinates, got %d"
                             % (size, len(coeffs)))
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "coeffs",
                           tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("DescentVector is immutable")

    # -- construction helpers ------------------------------------------

    @staticmethod
    def zero(system, tag=BASIS_X):
        return DescentVector(system, [ZERO] * (1 << system.rank), tag)

    @staticmethod
    def from_map(system, mapping, tag=BASIS_X):
        out = [ZERO] * (1 << system.rank)
        for subset, c in mapping.items():
            out[_as_mask(system, subset)] += Fraction(c)
        return DescentVector(system, out, tag)

    # -- ring structure -------------------------------------------------

    def _check_peer(self, other):
        if self.system is not other.system:
            raise SystemMismatch(
                "operands live over different Coxeter systems")

    def __add__(self, other):
        if not isinstance(other, DescentVector):
            return NotImplemented
        self._check_peer(other)
        o = other.in_basis(self.tag)
        return DescentVector(
            self.system,
            [a + b for a, b in zip(self.coeffs, o.coeffs)], self.tag)

    def __sub__(self, other):
        if not isinstance(other, DescentVector):
            return NotImplemented
        self._check_peer(other)
        o = other.in_basis(self.tag)
        return DescentVector(
            self.system,
            [a - b for a, b in zip(self.coeffs, o.coeffs)], self.tag)

    def __neg__(self):
        return DescentVector(self.system, [-a for a in self.coeffs], self.tag)

    def __mul__(self, other):
        if isinstance(other, DescentVector):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return DescentVector(
                self.system, [c * a for a in self.coeffs], self.tag)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DescentVector):
            return NotImplemented
        if self.system is not other.system:
            return False
        return self.x_coords() == other.x_coords()

    def __hash__(self):
        return hash((id(self.system), tuple(self.x_coords())))

    # -- coordinates ------------------------------------------------------

    def x_coords(self):
        return _to_x_coords(self.coeffs, self.tag, self.system.rank)

    def in_basis(self, tag):
        if tag == self.tag:
            return self
        if tag not in _TAGS:
            raise ValueError("unknown basis tag %r" % (tag,))
        xc = self.x_coords()
        return DescentVector(
            self.system, _from_x_coords(xc, tag, self.system.rank), tag)

    def coefficient(self, subset):
        return self.coeffs[_as_mask(self.system, subset)]

    def support(self):
        """Masks with nonzero coordinate, in the vector's own basis."""
        return [m for m, c in enumerate(self.coeffs) if c != 0]

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_positive(self):
        """Componentwise nonnegative on the x-basis."""
        return all(c >= 0 for c in self.x_coords())

    # -- text form --------------------------------------------------------

    def _term_name(self, mask):
        if mask == self.system.full_mask and self.system.rank > 0:
            return "%sS" % self.tag
        labels = self.system.labels_of_mask(mask)
        return "%s[%s]" % (self.tag, ",".join(labels))

    def __str__(self):
        parts = []
        order = sorted(range(len(self.coeffs)),
                       key=lambda m: (-popcount(m), tuple(iter_bits(m))))
        for mask in order:
            c = self.coeffs[mask]
            if c == 0:
                continue
            name = self._term_name(mask)
            mag = abs(c)
            body = name if mag == 1 else "%s*%s" % (mag, name)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return "<DescentVector %s over %s>" % (self, self.system.type_label)


class TauVector:
    """Values of every one-dimensional character on one element.

    Entry k is the character value at the shape with class id k. The kernel
    of the full collection is the radical, and the map is multiplicative.
    """

    __slots__ = ("system", "values")

    def __init__(self, system, values):
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "values", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("TauVector is immutable")

    def __eq__(self, other):
        if not isinstance(other, TauVector):
            return NotImplemented
        return self.system is other.system and self.values == other.values

    def __hash__(self):
        return hash((id(self.system), self.values))

    def pointwise(self, other):
        if self.system is not other.system:
            raise SystemMismatch("tau vectors over different systems")
        return TauVector(self.system,
                         [a * b for a, b in zip(self.values, other.values)])

    def __repr__(self):
        return "<TauVector %s>" % (tuple(str(v) for v in self.values),)


class LoewyProfile:
    """Dimensions of the successive radical powers, until they vanish."""

    __slots__ = ("dims",)

    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d <= 0 for d in dims):
            raise ValueError("dims must be positive down to the last"
                             " nonzero power")
        if any(a <= b for a, b in zip(dims, dims[1:])):
            raise ValueError("radical power dimensions must strictly drop")
        object.__setattr__(self, "dims", dims)

    def __setattr__(self, name, value):
        raise AttributeError("LoewyProfile is immutable")

    @property
    def loewy_length(self):
        return len(self.dims)

    @property
    def dimension(self):
        return self.dims[0]

    @property
    def irreducible_count(self):
        d1 = self.dims[1] if len(self.dims) > 1 else 0
        return self.dims[0] - d1

    def __eq__(self, other):
        if not isinstance(other, LoewyProfile):
            return NotImplemented
        return self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return "<LoewyProfile dims=%s>" % (self.dims,)


# ---------------------------------------------------------------------------
# basis constructors


def basis_x(system, subset):
    out = [ZERO] * (1 << system.rank)
    out[_as_mask(system, subset)] = ONE
    return DescentVector(system, out, BASIS_X)


def basis_y(system, subset):
    out = [ZERO] * (1 << system.rank)
    out[_as_mask(system, subset)] = ONE
    return DescentVector(system, out, BASIS_Y)


def basis_xprime(system, subset):
    out = [ZERO] * (1 << system.rank)
    out[_as_mask(system, subset)] = ONE
    return DescentVector(system, out, BASIS_XPRIME)


def unit(system, tag=BASIS_X):
    """The multiplicative unit: the coset sum over the full generator set."""
    return basis_x(system, system.full_mask).in_basis(tag)


def convert(vector, tag):
    return vector.in_basis(tag)


# ---------------------------------------------------------------------------
# multiplication


def _scaled_int_coords(coeffs):
    """Return (numpy int array, common denominator) for exact coords."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    nums = [int(c * den) for c in coeffs]
    return nums, den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def multiply(left, right):
    """Product in the descent algebra, via the structure constants."""
    if not isinstance(left, DescentVector) or not isinstance(
            right, DescentVector):
        raise TypeError("multiply expects two DescentVector operands")
    left._check_peer(right)
    system = left.system
    T = system.structure_tensor()
    size = 1 << system.rank
    a, da = _scaled_int_coords(left.x_coords())
    b, db = _scaled_int_coords(right.x_coords())
    amax = max((abs(v) for v in a), default=0)
    bmax = max((abs(v) for v in b), default=0)
    tmax = int(T.max()) if T.size else 0
    bound = amax * bmax * tmax * size * size
    if bound < (1 << 62):
        av = np.array(a, dtype=np.int64)
        bv = np.array(b, dtype=np.int64)
        cv = np.einsum("i,ijk,j->k", av, T, bv)
        nums = [int(v) for v in cv]
    else:
        nums = [0] * size
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                row = T[i, j]
                for k in np.nonzero(row)[0]:
                    nums[int(k)] += ai * bj * int(row[k])
    den = da * db
    out = [Fraction(v, den) for v in nums]
    return DescentVector(system, out, BASIS_X).in_basis(left.tag)


def group_vector(vector):
    """Expand to coordinates on the group elements themselves.

    The coset sum over mask I collects exactly the w whose ascent mask
    contains I, so the group coordinate at w is the subset-sum of the
    x-coordinates evaluated at the ascent mask of w.
    """
    system = vector.system
    n = system.rank
    z = list(vector.x_coords())
    for b in range(n):
        bit = 1 << b
        for m in range(1 << n):
            if m & bit:
                z[m] = z[m] + z[m ^ bit]
    return [z[int(r)] for r in system.rasc]


def vector_from_group(system, gcoeffs, tag=BASIS_X):
    """Fold group-algebra coordinates back onto the descent basis.

    Requires constancy on each equal-ascent-set class; a violation means
    the group vector left the descent algebra and is reported as such.
    """
    n = system.rank
    size = 1 << n
    ycoords = [None] * size
    for w in range(system.order):
        m = int(system.rasc[w])
        c = gcoeffs[w]
        if ycoords[m] is None:
            ycoords[m] = c
        elif ycoords[m] != c:
            raise NotInDescentAlgebra(
                "group vector is not constant on the descent class of "
                "mask %d" % m)
    ycoords = [ZERO if c is None else Fraction(c) for c in ycoords]
    return DescentVector(system, ycoords, BASIS_Y).in_basis(tag)


def oracle_multiply(left, right):
    """Slow reference product: convolve honest group-algebra vectors.

    Uses the full multiplication table when the group is small enough and
    per-element translations otherwise, then folds back through the
    equal-ascent-class constancy check.
    """
    if not isinstance(left, DescentVector) or not isinstance(
            right, DescentVector):
        raise TypeError("oracle_multiply expects two DescentVector operands")
    left._check_peer(right)
    system = left.system
    order = system.order
    ga = group_vector(left)
    gb = group_vector(right)
    da = 1
    for c in ga:
        da = da * c.denominator // _gcd(da, c.denominator)
    db = 1
    for c in gb:
        db = db * c.denominator // _gcd(db, c.denominator)
    na = np.array([int(c * da) for c in ga], dtype=np.int64)
    nb = np.array([int(c * db) for c in gb], dtype=np.int64)
    amax = int(np.abs(na).max()) if order else 0
    bmax = int(np.abs(nb).max()) if order else 0
    if amax * bmax * order < (1 << 62):
        gc = np.zeros(order, dtype=np.int64)
        if order <= 6000:
            mt = system.multiplication_table()
            for u in range(order):
                if na[u]:
                    np.add.at(gc, mt[u], na[u] * nb)
        else:
            for u in range(order):
                if na[u]:
                    np.add.at(gc, system.left_translation(u), na[u] * nb)
        nums = [int(v) for v in gc]
    else:
        nums = [0] * order
        mt = system.multiplication_table()
        for u in range(order):
            if na[u]:
                row = mt[u]
                for v in range(order):
                    if nb[v]:
                        nums[int(row[v])] += int(na[u]) * int(nb[v])
    den = da * db
    out = [Fraction(v, den) for v in nums]
    return vector_from_group(system, out, left.tag)


# ---------------------------------------------------------------------------
# characters, radical, Loewy series


def _algebra_context(system):
    ctx = system.__dict__.get("_algebra_ctx")
    if ctx is None:
        ctx = {}
        system.__dict__["_algebra_ctx"] = ctx
    return ctx


def tau_matrix(system):
    """Row k = shape class k: values of that character on the x-basis.

    The value at column I is the structure constant T[I, J, J] for any
    member J of the shape; independence of the choice is asserted here.
    """
    ctx = _algebra_context(system)
    mat = ctx.get("tau_matrix")
    if mat is None:
        T = system.structure_tensor()
        rows = []
        for shape in system.shapes():
            col = T[:, shape.canonical, shape.canonical]
            for other in shape.members:
                if not np.array_equal(T[:, other, other], col):
                    raise AssertionError(
                        "character value depends on the member chosen "
                        "inside shape class %d" % shape.class_id)
            rows.append(tuple(Fraction(int(v)) for v in col))
        mat = tuple(rows)
        ctx["tau_matrix"] = mat
    return mat


def tau(vector):
    """All one-dimensional character values of the element."""
    mat = tau_matrix(vector.system)
    xc = vector.x_coords()
    vals = [sum((c * v for c, v in zip(xc, row)), ZERO) for row in mat]
    return TauVector(vector.system, vals)


def tau_at_mask(vector, mask):
    """Character value at the shape of one generator subset."""
    system = vector.system
    sid = system.shape_id_of_mask(_as_mask(system, mask))
    return tau(vector).values[sid]


def radical_basis(system):
    """Basis of the common kernel of all one-dimensional characters.

    Computed as an exact nullspace; the classical spanning set by
    differences of same-shape basis elements is checked to span the same
    subspace before returning.
    """
    ctx = _algebra_context(system)
    cached = ctx.get("radical_basis")
    if cached is None:
        size = 1 << system.rank
        rows = [list(row) for row in tau_matrix(system)]
        kern = linalg.nullspace(rows, size)
        span = Span(size)
        for vec in kern:
            span.add(vec)
        diffs = []
        for shape in system.shapes():
            for member in shape.members:
                if member != shape.canonical:
                    vec = [ZERO] * size
                    vec[member] = ONE
                    vec[shape.canonical] = -ONE
                    diffs.append(vec)
                    if not span.contains(vec):
                        raise AssertionError(
                            "same-shape difference escapes the character "
                            "kernel")
        if len(diffs) != span.dim:
            raise AssertionError(
                "difference spanning set does not fill the radical")
        cached = tuple(DescentVector(system, vec, BASIS_X) for vec in kern)
        ctx["radical_basis"] = cached
    return list(cached)


def _radical_difference_vectors(system):
    """Integer spanning set of the radical: same-shape differences."""
    size = 1 << system.rank
    out = []
    for shape in system.shapes():
        for member in shape.members:
            if member != shape.canonical:
                vec = [ZERO] * size
                vec[member] = ONE
                vec[shape.canonical] = -ONE
                out.append(DescentVector(system, vec, BASIS_X))
    return out


def _power_dims(system, radical_vectors):
    """Dimensions of successive powers of the span of radical_vectors."""
    size = 1 << system.rank
    dims = []
    current = list(radical_vectors)
    span = Span(size)
    for v in current:
        span.add(v.x_coords())
    while span.dim > 0:
        dims.append(span.dim)
        basis = [DescentVector(system, row, BASIS_X)
                 for row in span.basis()]
        nxt = Span(size)
        nxt_vecs = []
        for r in radical_vectors:
            for b in basis:
                p = multiply(r, b)
                if nxt.add(p.x_coords()):
                    nxt_vecs.append(p)
        span = nxt
    return dims


def loewy_profile(system):
    """Dimension sequence of the radical filtration of the full algebra."""
    ctx = _algebra_context(system)
    prof = ctx.get("loewy_profile")
    if prof is None:
        dims = [1 << system.rank]
        dims.extend(_power_dims(system, _radical_difference_vectors(system)))
        prof = LoewyProfile(dims)
        ctx["loewy_profile"] = prof
    return prof


def minimal_polynomial(vector):
    """Monic minimal polynomial, as a low-to-high coefficient tuple.

    Power iteration: feed 1, a, a^2, ... into an augmented span until the
    next power becomes dependent; the dependency coefficients are the
    polynomial.
    """
    system = vector.system
    size = 1 << system.rank
    span = AugSpan(size)
    powers = [unit(system)]
    span.add(powers[0].x_coords())
    while True:
        nxt = multiply(vector, powers[-1])
        expr = span.express(nxt.x_coords())
        if expr is not None:
            m = len(powers)
            coeffs = [ZERO] * (m + 1)
            coeffs[m] = ONE
            for k, c in expr.items():
                coeffs[k] -= c
            return tuple(coeffs)
        span.add(nxt.x_coords())
        powers.append(nxt)


def characteristic_polynomial_positive(vector):
    """Split characteristic polynomial of left multiplication.

    For a componentwise-nonnegative element this is the product over all
    generator subsets J of (T - tau_{shape(J)}(a)).
    """
    if not vector.is_positive():
        raise NotPositive("characteristic factorization needs nonnegative "
                          "x-coordinates")
    system = vector.system
    tv = tau(vector)
    roots = []
    for mask in range(1 << system.rank):
        roots.append(tv.values[system.shape_id_of_mask(mask)])
    return linalg.poly_from_roots(roots)


# ---------------------------------------------------------------------------
# positivity, families, ideals


def saturated_family(vector, equivariant=False):
    """Downward closure of the support, plainly or through the shape order.

    Plain: all subsets contained in some support subset. Equivariant: all
    subsets whose shape sits below some support subset's shape.
    """
    system = vector.system
    xc = vector.x_coords()
    supp = [m for m, c in enumerate(xc) if c != 0]
    size = 1 << system.rank
    fam = set()
    if equivariant:
        for i in range(size):
            si = system.shape_id_of_mask(i)
            for j in supp:
                if system.shape_order_leq(si, system.shape_id_of_mask(j)):
                    fam.add(i)
                    break
    else:
        for i in range(size):
            for j in supp:
                if i & ~j == 0:
                    fam.add(i)
                    break
    _assert_saturated(system, fam, equivariant)
    return frozenset(fam)


def _assert_saturated(system, fam, equivariant):
    for i in fam:
        for b in iter_bits(i):
            if i ^ (1 << b) not in fam:
                raise AssertionError("family is not downward closed")
    if equivariant:
        for i in fam:
            si = system.shape_id_of_mask(i)
            for j in range(1 << system.rank):
                sj = system.shape_id_of_mask(j)
                if system.shape_order_leq(sj, si) and j not in fam:
                    raise AssertionError(
                        "family is not closed under the shape order")


def family_span(system, family):
    """The coordinate subspace spanned by the x-basis over the family."""
    size = 1 << system.rank
    span = Span(size)
    for mask in family:
        vec = [ZERO] * size
        vec[mask] = ONE
        span.add(vec)
    return span


def right_ideal(vector):
    """Span of the products (vector * x_J): the principal right ideal."""
    system = vector.system
    size = 1 << system.rank
    span = Span(size)
    for mask in range(size):
        span.add(multiply(vector, basis_x(system, mask)).x_coords())
    return span


def left_ideal(vector):
    """Span of the products (x_J * vector): the principal left ideal."""
    system = vector.system
    size = 1 << system.rank
    span = Span(size)
    for mask in range(size):
        span.add(multiply(basis_x(system, mask), vector).x_coords())
    return span


def is_invertible(vector):
    """A unit precisely when no one-dimensional character vanishes on it."""
    return all(v != 0 for v in tau(vector).values)


def commutator_image(vector):
    """Span of the values of x -> vector*x - x*vector on the basis."""
    system = vector.system
    size = 1 << system.rank
    span = Span(size)
    for mask in range(size):
        xj = basis_x(system, mask)
        diff = multiply(vector, xj) - multiply(xj, vector)
        span.add(diff.x_coords())
    return span


def centralizer_dimension(vector):
    """Dimension of the commutant {x : vector*x = x*vector}."""
    size = 1 << vector.system.rank
    return size - commutator_image(vector).dim


def eigenspace_dim_on_regular(vector, value):
    """Multiplicity of an eigenvalue of the element on the group algebra.

    Valid for componentwise-nonnegative elements: the multiplicity of xi
    counts the group elements whose minimal-parabolic shape gives character
    value xi.
    """
    if not vector.is_positive():
        raise NotPositive(
            "regular-representation eigenvalue count needs nonnegative "
            "x-coordinates")
    system = vector.system
    value = Fraction(value)
    tv = tau(vector)
    _cls, cshapes, sizes = system.class_shape_ids()
    total = 0
    for c, size in enumerate(sizes):
        if tv.values[int(cshapes[c])] == value:
            total += size
    return total


def element_shape_character(system, vector):
    """Sum over the whole group of the character value at each element's
    minimal-parabolic shape. Equals |W| when the element is a coset-sum
    basis vector."""
    tv = tau(vector)
    _cls, cshapes, sizes = system.class_shape_ids()
    return sum((tv.values[int(cshapes[c])] * sizes[c]
                for c in range(len(sizes))), ZERO)


# ---------------------------------------------------------------------------
# permutation-character pairing


def theta_value_table(system):
    """value[c][I]: value at class c of the permutation character of the
    coset action for mask I, as exact integers."""
    ctx = _algebra_context(system)
    cached = ctx.get("theta_table")
    if cached is None:
        n = system.rank
        size = 1 << n
        order = system.order
        conj = system.conj_tables()
        _cls, reps, _sizes = system.element_classes()
        table = []
        for r in reps:
            m = np.empty(order, dtype=np.int32)
            m[0] = r
            for w in range(1, order):
                m[w] = conj[m[int(system.parent[w])], int(system.lastgen[w])]
            sup = system.supp[m]
            cnts = np.bincount(sup, minlength=size).astype(np.int64)
            for b in range(n):
                bit = 1 << b
                for msk in range(size):
                    if msk & bit:
                        cnts[msk] += cnts[msk ^ bit]
            table.append([int(cnts[msk]) for msk in range(size)])
        # each entry currently counts all u with supp(u^-1 r u) inside I;
        # divide by |W_I| to count fixed cosets
        par_orders = [len(system.parabolic_indices(msk))
                      for msk in range(size)]
        out = []
        for row in table:
            vals = []
            for msk in range(size):
                q, rem = divmod(row[msk], par_orders[msk])
                if rem:
                    raise AssertionError(
                        "fixed-point count not divisible by the parabolic "
                        "order")
                vals.append(q)
            out.append(tuple(vals))
        cached = tuple(out)
        ctx["theta_table"] = cached
    return cached


def bhs_pairing(system):
    """Matrix N[I][J]: the I-th coset character summed over the J-th
    distinguished-representative set. Symmetric by the character identity."""
    size = 1 << system.rank
    theta = theta_value_table(system)
    cls, _reps, _sizes = system.element_classes()
    ncls = len(_sizes)
    cnt = np.zeros((ncls, size), dtype=np.int64)
    rasc = system.rasc
    for w in range(system.order):
        cnt[int(cls[w]), int(rasc[w])] += 1
    # superset sums per class: X_J collects w with ascent mask containing J
    n = system.rank
    for b in range(n):
        bit = 1 << b
        for msk in range(1 << n):
            if not msk & bit:
                cnt[:, msk] += cnt[:, msk | bit]
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            total = 0
            for c in range(ncls):
                total += theta[c][i] * int(cnt[c, j])
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# named witnesses


def _positions_mask(system, lo, hi):
    """Bitmask of generator positions lo..hi inclusive (0-based)."""
    if lo > hi:
        return 0
    mask = 0
    for p in range(lo, hi + 1):
        if p < 0 or p >= system.rank:
            raise InvalidSubset("generator position %d out of range" % p)
        mask |= 1 << p
    return mask


def witness_element_typeA(system):
    """Radical element whose powers realize the maximal Loewy length in
    the single-laced linear type: difference of the two maximal proper
    interval subsets."""
    comps = system.components
    if len(comps) != 1 or comps[0][0] != "A":
        raise WrongType("expected an irreducible linear-diagram system")
    n = system.rank
    if n < 2:
        raise WrongType("need rank at least 2 for a nonzero witness")
    left = _positions_mask(system, 0, n - 2)
    right = _positions_mask(system, 1, n - 1)
    return basis_x(system, left) - basis_x(system, right)


def witness_elements_typeB(system):
    """Radical elements a_i and their alternating companions for the
    doubled-bond linear type, position 0 being the short-branch generator.

    Returns (a_list, tau_list): a_i of index i = 1..floor((n-1)/2), and the
    signed binomial combinations whose leading term tracks the product
    a_i * ... * a_1.
    """
    comps = system.components
    if len(comps) != 1 or comps[0][0] != "B":
        raise WrongType("expected an irreducible doubled-bond system")
    n = system.rank
    if n < 3:
        raise WrongType("witness family needs rank at least 3")
    r = (n - 1) // 2
    a_list = []
    t_list = []
    for i in range(1, r + 1):
        a = (basis_x(system, _positions_mask(system, 2 * i - 1, n - 2))
             - basis_x(system, _positions_mask(system, 2 * i, n - 1)))
        a_list.append(a)
        coeffs = {}
        for j in range(0, 2 * i):
            mask = _positions_mask(system, j + 1, n - 2 * i + j)
            c = Fraction((-1) ** j * comb(2 * i - 1, j))
            coeffs[mask] = coeffs.get(mask, ZERO) + c
        t_list.append(DescentVector.from_map(system, coeffs, BASIS_X))
    return a_list, t_list
