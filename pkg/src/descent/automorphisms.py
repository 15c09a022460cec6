"""Length-preserving automorphisms and their fixed subalgebras.

A diagram automorphism is a permutation of the generator positions that
preserves the Coxeter matrix. It acts on the algebra by permuting the
coset-sum basis; the fixed points of that action form a subalgebra whose
radical and Loewy series this module computes two independent ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import AutomorphismMismatch
from .linalg import Span, ZERO, ONE
from . import algebra as alg
from .algebra import DescentVector, LoewyProfile
from .coxeter import iter_bits


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A Coxeter-matrix-preserving permutation of generator positions."""
    permutation: tuple
    order: int
    is_inner_by_w0: bool

    def apply_position(self, pos):
        return self.permutation[pos]

    def apply_mask(self, mask):
        out = 0
        for b in iter_bits(mask):
            out |= 1 << self.permutation[b]
        return out

    def is_identity(self):
        return all(p == i for i, p in enumerate(self.permutation))


def _preserves_matrix(matrix, perm):
    n = len(matrix)
    for i in range(n):
        for j in range(n):
            if matrix[perm[i]][perm[j]] != matrix[i][j]:
                return False
    return True


def _perm_order(perm):
    n = len(perm)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        ln, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        g = _gcd(order, ln)
        order = order // g * ln
    return order


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def sigma0(system):
    """The automorphism induced by conjugating with the longest element."""
    w0 = system.longest_element().index
    perm = tuple(int(system.csany[w0, s]) for s in range(system.rank))
    if any(p < 0 for p in perm):
        raise AssertionError("longest element does not normalize the "
                             "generator set")
    return DiagramAutomorphism(permutation=perm, order=_perm_order(perm),
                               is_inner_by_w0=True)


def diagram_automorphisms(system):
    """All Coxeter-matrix-preserving generator permutations.

    Identity first, then sorted by (order, permutation).
    """
    n = system.rank
    inner = sigma0(system).permutation
    found = []
    for perm in permutations(range(n)):
        if _preserves_matrix(system.matrix, perm):
            found.append(perm)
    ident = tuple(range(n))
    found.sort(key=lambda p: (p != ident, _perm_order(p), p))
    return [DiagramAutomorphism(permutation=p, order=_perm_order(p),
                                is_inner_by_w0=(p == inner))
            for p in found]


def automorphism_of_order(system, order):
    """All diagram automorphisms of the given multiplicative order."""
    return [s for s in diagram_automorphisms(system) if s.order == order]


def apply_automorphism(sigma, vector):
    """Permute the element by the automorphism, in its own basis.

    Subset permutation commutes with all three coordinate transforms, so
    the coordinates move by the induced mask permutation directly.
    """
    system = vector.system
    _check_sigma(system, sigma)
    out = [ZERO] * len(vector.coeffs)
    for mask, c in enumerate(vector.coeffs):
        if c != 0:
            out[sigma.apply_mask(mask)] = c
    return DescentVector(system, out, vector.tag)


def _check_sigma(system, sigma):
    if len(sigma.permutation) != system.rank or not _preserves_matrix(
            system.matrix, sigma.permutation):
        raise AutomorphismMismatch(
            "permutation %r is not a diagram automorphism of %s"
            % (sigma.permutation, system.type_label))


def shape_image(system, sigma, shape_id):
    """Image of a shape class under the automorphism; well defined."""
    shapes = system.shapes()
    members = shapes[shape_id].members
    images = {system.shape_id_of_mask(sigma.apply_mask(m)) for m in members}
    if len(images) != 1:
        raise AssertionError("automorphism does not act on shape classes")
    return images.pop()


def shape_orbits(system, sigma):
    """Orbits of the cyclic group generated by sigma on shape classes."""
    nshapes = len(system.shapes())
    seen = [False] * nshapes
    orbits = []
    for s in range(nshapes):
        if seen[s]:
            continue
        orbit = []
        t = s
        while not seen[t]:
            seen[t] = True
            orbit.append(t)
            t = shape_image(system, sigma, t)
        orbits.append(tuple(orbit))
    return orbits


def mask_orbits(system, sigma):
    """Orbits of the cyclic group generated by sigma on generator subsets."""
    size = 1 << system.rank
    seen = [False] * size
    orbits = []
    for m in range(size):
        if seen[m]:
            continue
        orbit = []
        t = m
        while not seen[t]:
            seen[t] = True
            orbit.append(t)
            t = sigma.apply_mask(t)
        orbits.append(tuple(sorted(orbit)))
    return orbits


class FixedSubalgebra:
    """The subalgebra of elements fixed by one diagram automorphism."""

    __slots__ = ("parent", "sigma", "orbits", "basis", "span",
                 "shape_orbit_list", "_radical")

    def __init__(self, parent, sigma, orbits, basis, span, shape_orbit_list):
        self.parent = parent
        self.sigma = sigma
        self.orbits = orbits
        self.basis = basis
        self.span = span
        self.shape_orbit_list = shape_orbit_list
        self._radical = None

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def shape_orbit_count(self):
        return len(self.shape_orbit_list)

    def contains(self, vector):
        return self.span.contains(vector.x_coords())

    def radical_vectors(self):
        """Basis of the radical of the fixed subalgebra.

        Two computations must agree: symmetrizing the ambient radical over
        the automorphism powers, and the direct character kernel inside
        the subalgebra.
        """
        if self._radical is None:
            system = self.parent
            size = 1 << system.rank
            projected = Span(size)
            proj_vecs = []
            for r in alg.radical_basis(system):
                avg = r
                img = r
                for _ in range(self.sigma.order - 1):
                    img = apply_automorphism(self.sigma, img)
                    avg = avg + img
                if projected.add(avg.x_coords()):
                    proj_vecs.append(avg)
            # direct route: character kernel restricted to the subalgebra
            tmat = alg.tau_matrix(system)
            rows = []
            for b in self.basis:
                xb = b.x_coords()
                rows.append([sum((c * v for c, v in zip(xb, trow)), ZERO)
                             for trow in tmat])
            kern = _left_kernel(rows)
            direct = Span(size)
            for combo in kern:
                vec = [ZERO] * size
                for c, b in zip(combo, self.basis):
                    if c != 0:
                        for m, x in enumerate(b.x_coords()):
                            vec[m] += c * x
                direct.add(vec)
            if not projected.equals(direct):
                raise AssertionError(
                    "fixed-subalgebra radical computed two ways disagrees")
            self._radical = proj_vecs
        return list(self._radical)


def _left_kernel(rows):
    """Kernel of the linear map sending e_i to rows[i]."""
    from . import linalg
    if not rows:
        return []
    width = len(rows[0])
    n = len(rows)
    # transpose and take the right kernel of the transposed matrix
    cols = [[rows[i][j] for i in range(n)] for j in range(width)]
    return linalg.nullspace(cols, n)


def fixed_subalgebra(system, sigma):
    """Construct the fixed-point subalgebra with its orbit-sum basis."""
    _check_sigma(system, sigma)
    size = 1 << system.rank
    orbits = mask_orbits(system, sigma)
    basis = []
    span = Span(size)
    for orbit in orbits:
        vec = [ZERO] * size
        for m in orbit:
            vec[m] = ONE
        b = DescentVector(system, vec, alg.BASIS_X)
        basis.append(b)
        span.add(vec)
    out = FixedSubalgebra(system, sigma, orbits, basis, span,
                          shape_orbits(system, sigma))
    # closure under multiplication
    for i, u in enumerate(basis):
        for v in basis[i:]:
            if not out.contains(alg.multiply(u, v)):
                raise AssertionError("orbit sums are not closed under "
                                     "multiplication")
    return out


def loewy_profile_fixed(system, sigma):
    """Loewy profile of the fixed subalgebra of one automorphism."""
    fixed = fixed_subalgebra(system, sigma)
    dims = [fixed.dimension]
    dims.extend(alg._power_dims(system, fixed.radical_vectors()))
    return LoewyProfile(dims)


def w0_centrality_criterion(system):
    """Centrality of the longest element, read off the y-basis units.

    The longest element is central exactly when every equal-descent-class
    sum is invertible; when it is not, at least one such sum has a
    vanishing character value, and those masks are returned as witnesses.
    """
    bad = []
    for mask in range(1 << system.rank):
        if not alg.is_invertible(alg.basis_y(system, mask)):
            bad.append(mask)
    is_central = not bad
    if is_central != system.is_w0_central():
        raise AssertionError(
            "unit criterion disagrees with the direct centrality check")
    return is_central, bad
