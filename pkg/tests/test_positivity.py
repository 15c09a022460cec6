"""Positive elements: spectral facts, ideal stability, and the sharp
counterexamples showing where positivity is really needed."""

import random
from fractions import Fraction

import pytest

from descent import algebra as alg
from descent import verify as vfy
from descent.coxeter import popcount
from descent import linalg


def seeded_positive(system, rng):
    size = 1 << system.rank
    coeffs = [Fraction(rng.randrange(10)) for _ in range(size)]
    if all(c == 0 for c in coeffs):
        coeffs[size - 1] = Fraction(1)
    return alg.DescentVector(system, coeffs, alg.BASIS_X)


def subset_pairs(full):
    for kmask in range(full + 1):
        jmask = kmask
        while True:
            yield jmask, kmask
            if jmask == 0:
                break
            jmask = (jmask - 1) & kmask


@pytest.mark.parametrize("label", ["A2xA1", "B3", "D4"])
class TestPositiveElements:
    N = 40

    def test_minimal_polynomial_squarefree(self, system_factory, label):
        system = system_factory(label)
        rng = random.Random("sqfree:" + label)
        for _ in range(self.N):
            a = seeded_positive(system, rng)
            assert linalg.poly_is_squarefree(alg.minimal_polynomial(a))

    def test_square_generates_same_ideals(self, system_factory, label):
        system = system_factory(label)
        rng = random.Random("ideals:" + label)
        for _ in range(self.N):
            a = seeded_positive(system, rng)
            sq = alg.multiply(a, a)
            assert alg.right_ideal(a).equals(alg.right_ideal(sq))
            assert alg.left_ideal(a).equals(alg.left_ideal(sq))

    def test_square_has_same_centralizer(self, system_factory, label):
        system = system_factory(label)
        rng = random.Random("comm:" + label)
        for _ in range(12):
            a = seeded_positive(system, rng)
            sq = alg.multiply(a, a)
            assert (alg.commutator_image(a).canonical()
                    == alg.commutator_image(sq).canonical())

    def test_right_ideal_is_saturated_span(self, system_factory, label):
        system = system_factory(label)
        rng = random.Random("sature:" + label)
        for _ in range(self.N):
            a = seeded_positive(system, rng)
            fam = alg.saturated_family(a, equivariant=True)
            span = alg.family_span(system, fam)
            assert alg.right_ideal(a).equals(span)

    def test_tau_antitone_in_subsets(self, system_factory, label):
        system = system_factory(label)
        rng = random.Random("mono:" + label)
        for _ in range(self.N):
            a = seeded_positive(system, rng)
            tv = alg.tau(a)
            for jmask, kmask in subset_pairs(system.full_mask):
                big = tv.values[system.shape_id_of_mask(jmask)]
                small = tv.values[system.shape_id_of_mask(kmask)]
                assert small <= big


@pytest.mark.parametrize("label", ["A3", "B4"])
def test_positivity_suite_passes(label):
    report = vfy.run_suite("positivity", label, seed=0)
    assert report.passed, report.render_text()


def test_positive_spectrum_counts_group_elements(system_factory):
    system = system_factory("B3")
    rng = random.Random("spec")
    for _ in range(6):
        a = seeded_positive(system, rng)
        values = set(alg.tau(a).values)
        total = sum(alg.eigenspace_dim_on_regular(a, v) for v in values)
        assert total == system.order
        outside = max(values) + 1
        assert alg.eigenspace_dim_on_regular(a, outside) == 0


class TestCounterexamples:
    """The five sharp failures for elements that are not positive."""

    def test_radical_line_right_ideal_too_small(self, system_factory):
        # difference of the two conjugate singletons: spans the radical,
        # but its right ideal misses the saturated-family span
        system = system_factory("A2")
        a = alg.basis_x(system, 0b01) - alg.basis_x(system, 0b10)
        rad = alg.radical_basis(system)
        assert len(rad) == 1
        assert alg.right_ideal(a).contains(rad[0].x_coords())
        assert alg.right_ideal(a).dim == 1
        fam = alg.saturated_family(a, equivariant=True)
        assert sorted(fam) == [0b00, 0b01, 0b10]
        span = alg.family_span(system, fam)
        assert span.dim == 3
        assert not alg.right_ideal(a).equals(span)

    def test_left_right_ideals_differ(self, system_factory):
        # an element whose left ideal strictly exceeds its right ideal
        system = system_factory("A3")
        a = alg.basis_x(system, 0b001) - alg.basis_x(system, 0b110)
        witness = alg.basis_x(system, 0b010) - alg.basis_x(system, 0b100)
        assert alg.left_ideal(a).contains(witness.x_coords())
        assert not alg.right_ideal(a).contains(witness.x_coords())

    def test_positive_full_coefficient_yet_singular(self, system_factory):
        # the coefficient on the full subset is 1 > 0, still not a unit
        system = system_factory("A2")
        a = alg.basis_x(system, 0b11) - alg.basis_x(system, 0b10)
        assert a.coefficient(system.full_mask) == 1
        assert not alg.is_invertible(a)
        assert 0 in alg.tau(a).values

    def test_sum_of_ideals_is_not_ideal_of_sum(self, system_factory):
        system = system_factory("A2")
        a = alg.basis_x(system, 0b01) - alg.basis_x(system, 0b10)
        left = alg.right_ideal(a).sum(alg.right_ideal(-1 * a))
        right = alg.right_ideal(a + (-1 * a))
        assert left.dim == 1
        assert right.dim == 0
        assert not left.equals(right)

    def test_nilpotent_with_square_minimal_polynomial(self, system_factory):
        system = system_factory("A2")
        a = alg.basis_x(system, 0b01) - alg.basis_x(system, 0b10)
        p = alg.minimal_polynomial(a)
        assert p == (Fraction(0), Fraction(0), Fraction(1))  # T^2
        assert not linalg.poly_is_squarefree(p)
        assert alg.multiply(a, a).is_zero()
        assert alg.left_ideal(a).dim == 1
        assert alg.left_ideal(alg.multiply(a, a)).dim == 0


def test_strict_centralizer_example(system_factory):
    # a positive element with a proper commutant, stable under squaring
    system = system_factory("A3")
    a = alg.basis_x(system, 0b011)
    dz = alg.centralizer_dimension(a)
    assert dz == 5
    assert dz < (1 << system.rank)
    assert alg.centralizer_dimension(alg.multiply(a, a)) == dz
