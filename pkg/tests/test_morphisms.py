"""Maps between descent algebras: restriction to a parabolic, the type
B to D restriction, and quotient maps from self-opposed subsets.

Slow full-group verifications run on rank <= 3; rank 4 gets the linear
formulations plus targeted full-group spot checks.
"""

import os
import random
from fractions import Fraction

import pytest

from descent import algebra as alg
from descent import automorphisms as auto
from descent import morphisms as mo
from descent.errors import InvalidSubset, NotSelfOpposed, RankTooSmall


def all_masks(system):
    return range(system.full_mask + 1)


class TestMaskHelpers:
    def test_project_expand_round_trip(self):
        positions = [1, 3, 4]
        for cmask in range(8):
            big = mo.expand_mask(cmask, positions)
            assert mo.project_mask(big, positions) == cmask

    def test_conjugate_mask(self, system_factory):
        system = system_factory("A3")
        w0 = system.order - 1
        assert mo.conjugate_mask(system, w0, 0b001) == 0b100
        assert mo.conjugate_mask(system, 0, 0b011) == 0b011
        # a generic element moves singletons out of the generator set
        s1 = int(system.rmul[0, 0])
        assert mo.conjugate_mask(system, s1, 0b010) == -1


class TestRestriction:
    @pytest.mark.parametrize("label", ["A2", "A3", "B3", "I2(5)"])
    def test_group_level_factorization(self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            assert mo.factorization_check(system, kmask)
            assert mo.res_linear_check(system, kmask)
            assert mo.bbht_a_check_direct(system, kmask)

    @pytest.mark.parametrize("label", ["A3", "B3"])
    def test_multiplicative_on_all_pairs(self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            morphism = mo.res_K(system, kmask)
            assert morphism.maps_unit_to_unit()
            for imask in all_masks(system):
                xi = alg.basis_x(system, imask)
                for jmask in all_masks(system):
                    xj = alg.basis_x(system, jmask)
                    assert morphism.is_multiplicative_pair(xi, xj)

    @pytest.mark.parametrize("label", ["B4", "D4"])
    def test_multiplicative_sampled_rank_four(self, system_factory, label):
        system = system_factory(label)
        rng = random.Random("pairs:" + label)
        for kmask in all_masks(system):
            morphism = mo.res_K(system, kmask)
            for _ in range(25):
                xi = alg.basis_x(system, rng.randrange(system.full_mask + 1))
                xj = alg.basis_x(system, rng.randrange(system.full_mask + 1))
                assert morphism.is_multiplicative_pair(xi, xj)

    def test_restriction_to_full_is_identity(self, system_factory):
        system = system_factory("B3")
        morphism = mo.res_K(system, system.full_mask)
        for imask in all_masks(system):
            col = morphism.columns[imask]
            assert col[imask] == 1
            assert sum(1 for c in col if c != 0) == 1

    def test_restriction_to_empty_counts_cosets(self, system_factory):
        system = system_factory("B3")
        morphism = mo.res_K(system, 0)
        for imask in all_masks(system):
            col = morphism.columns[imask]
            assert col == (Fraction(len(system.coset_rep_indices(imask))),)

    @pytest.mark.parametrize("label", ["A3", "B3", "B4"])
    def test_transitive_through_nested_subsets(self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            sub = kmask
            while True:
                if sub != kmask or True:
                    direct = mo.res_K(system, sub)
                    outer = mo.res_K(system, kmask)
                    k_sys = outer.codomain
                    inner = mo.res_K(
                        k_sys, mo.project_mask(sub,
                                               outer.metadata["positions"]))
                    composed = mo.compose(inner, outer)
                    assert composed.equal_matrix(direct)
                if sub == 0:
                    break
                sub = (sub - 1) & kmask

    @pytest.mark.parametrize("label", ["A3", "B3", "D4"])
    def test_conjugate_subsets_give_matched_restrictions(
            self, system_factory, label):
        system = system_factory(label)
        for shape in system.shapes():
            base = shape.members[0]
            for other in shape.members[1:]:
                assert mo.res_conjugate_check(system, base, other)

    @pytest.mark.parametrize("label", ["A3", "B3", "F4"])
    def test_character_factorization(self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            assert mo.res_tau_check(system, kmask)

    @pytest.mark.parametrize("label", ["A3", "B3"])
    def test_kernel_complements_left_ideal(self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            assert mo.decomposition_check(system, kmask)

    @pytest.mark.parametrize("label", ["A3", "B3", "D4"])
    def test_image_fixed_by_complement_group(self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            assert mo.points_fixes_check(system, kmask)


class TestSurjectivity:
    def test_a3_verdicts(self, system_factory):
        system = system_factory("A3")
        # connected subsets of the path diagram are exactly the
        # surjective ones
        connected = {0b000, 0b001, 0b010, 0b100, 0b011, 0b110, 0b111}
        for kmask in all_masks(system):
            report = mo.surjectivity_report(system, kmask)
            assert report["surjective"] == (kmask in connected), kmask

    def test_f4_frozen_list(self, system_factory):
        system = system_factory("F4")
        expected_labels = [
            (), ("1",), ("2",), ("3",), ("4",),
            ("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"),
            ("1", "2", "3"), ("2", "3", "4"), ("1", "2", "3", "4"),
        ]
        expected = {system.mask_of_labels(ls) for ls in expected_labels}
        got = {k for k in all_masks(system)
               if mo.res_surjective(system, k)}
        assert got == expected

    def test_h4_frozen_list(self, system_factory):
        system = system_factory("H4")
        got = {k for k in all_masks(system)
               if mo.res_surjective(system, k)}
        assert got == {0b0000, 0b0001, 0b0010, 0b0100, 0b1000,
                       0b0111, 0b1111}

    @pytest.mark.parametrize("label", ["G2", "H3"])
    def test_size_rule_small_exceptional(self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            npos = len(mo.mask_positions(kmask))
            expect = npos <= 1 or kmask == system.full_mask
            assert mo.res_surjective(system, kmask) == expect

    def test_necessary_conditions_are_not_sufficient(self, system_factory):
        # five rank-6 witnesses where injectivity on shapes plus trivial
        # complement action hold and the map still fails to be onto
        system = system_factory("E6")
        for kmask in (15, 29, 58, 60, 61):
            assert mo.pi_K_injective(system, kmask)
            assert mo.wk_acts_trivially(system, kmask)
            report = mo.surjectivity_report(system, kmask)
            assert not report["surjective"], kmask

    @pytest.mark.parametrize("label", ["A3", "B3", "B4"])
    def test_surjective_implies_necessary_conditions(
            self, system_factory, label):
        system = system_factory(label)
        for kmask in all_masks(system):
            report = mo.surjectivity_report(system, kmask)
            if report["surjective"]:
                assert report["pi_injective"]
                assert report["complement_acts_trivially"]


class TestForkRestriction:
    def test_fork_matrices(self):
        with pytest.raises(RankTooSmall):
            mo.fork_system(1)
        d2 = mo.fork_system(2)
        assert d2.order == 4
        d3 = mo.fork_system(3)
        assert d3.order == 24  # the rank-3 fork is the linear type
        d4 = mo.fork_system(4)
        assert d4.labels == ["1p", "1", "2", "3"]

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_group_algebra_identity(self, n):
        assert mo.res_bd_a_check(n)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_multiplicative(self, n):
        morphism = mo.res_BD(n)
        rng = random.Random("bd:%d" % n)
        size = 1 << n
        pairs = ([(i, j) for i in range(size) for j in range(size)]
                 if n <= 3 else
                 [(rng.randrange(size), rng.randrange(size))
                  for _ in range(60)])
        bn = morphism.domain
        for imask, jmask in pairs:
            assert morphism.is_multiplicative_pair(
                alg.basis_x(bn, imask), alg.basis_x(bn, jmask))

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_image_is_swap_fixed_subalgebra(self, n):
        assert mo.res_bd_image_check(n)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_commutes_with_chain_restriction(self, n):
        assert mo.res_bd_square_check(n)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_triangular_against_b_chain(self, n):
        assert mo.res_b_triangular_check(n)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_d_chain_image(self, n):
        assert mo.res_d_image_check(n)

    @pytest.mark.parametrize("n,inner", [
        (2, False), (3, True), (4, False), (5, True), (6, False)])
    def test_swap_parity(self, n, inner):
        dn = mo.fork_system(n)
        sigma = mo.sigma_n_automorphism(dn)
        assert sigma.order == 2
        assert sigma.is_inner_by_w0 == inner


class TestQuotients:
    def test_self_opposed_detection(self, system_factory):
        a3 = system_factory("A3")
        assert mo.is_self_opposed(a3, 0)
        assert mo.is_self_opposed(a3, a3.full_mask)
        assert mo.is_self_opposed(a3, 0b101)
        assert not mo.is_self_opposed(a3, 0b001)
        with pytest.raises(NotSelfOpposed):
            mo.build_context(a3, 0b010)
        b3 = system_factory("B3")
        assert mo.is_self_opposed(b3, 0b001)

    def test_quotient_of_b3_by_short_generator(self, system_factory):
        system = system_factory("B3")
        ctx = mo.build_context(system, 0b001)
        assert ctx.quotient.rank == 2
        assert ctx.quotient.type_label == "B2"
        psi = mo.psi_K(system, 0b001, ctx)
        assert psi.maps_unit_to_unit()
        for imask in all_masks(system):
            xi = alg.basis_x(system, imask)
            for jmask in all_masks(system):
                assert psi.is_multiplicative_pair(
                    xi, alg.basis_x(system, jmask))
                if imask & 0b001 == 0b001 and jmask & 0b001 == 0b001:
                    assert mo.goetz1_set_check(system, ctx, imask, jmask)
        assert mo.varpi_tau_check(system, ctx)

    def test_quotient_of_b4_by_short_generator(self, system_factory):
        system = system_factory("B4")
        ctx = mo.build_context(system, 0b0001)
        assert ctx.quotient.type_label == "B3"
        rng = random.Random("b4quot")
        for _ in range(40):
            imask = rng.randrange(system.full_mask + 1) | 0b0001
            jmask = rng.randrange(system.full_mask + 1) | 0b0001
            assert mo.goetz1_set_check(system, ctx, imask, jmask)
        assert mo.varpi_tau_check(system, ctx)

    def test_quotient_by_antipodal_pair(self, system_factory):
        # the two path ends of the rank-3 linear type form a self-opposed
        # pair whose quotient collapses to a single generator
        system = system_factory("A3")
        ctx = mo.build_context(system, 0b101)
        assert ctx.quotient.rank == 1
        psi = mo.psi_K(system, 0b101, ctx)
        assert psi.rank() == 2

    def test_empty_subset_gives_identity_quotient(self, system_factory):
        system = system_factory("B3")
        ctx = mo.build_context(system, 0)
        assert ctx.quotient.rank == system.rank
        psi = mo.psi_K(system, 0, ctx)
        ident = mo.res_K(system, system.full_mask)
        perms = mo.matrix_preserving_bijections(psi.codomain, system)
        assert any(psi.equal_matrix(ident, perm) for perm in perms)

    def test_full_subset_gives_trivial_quotient(self, system_factory):
        system = system_factory("B3")
        ctx = mo.build_context(system, system.full_mask)
        assert ctx.quotient.rank == 0
        psi = mo.psi_K(system, system.full_mask, ctx)
        assert psi.rank() == 1

    @pytest.mark.parametrize("label", ["B3", "B4"])
    def test_quotient_is_not_a_chain_restriction(self, system_factory,
                                                 label):
        # same codomain type as the restriction to the parabolic copy
        # one rank down, but a genuinely different map under every
        # generator matching
        system = system_factory(label)
        ctx = mo.build_context(system, 0b001)
        psi = mo.psi_K(system, 0b001, ctx)
        res = mo.res_K(system, system.full_mask >> 1)
        perms = mo.matrix_preserving_bijections(res.codomain, psi.codomain)
        assert perms
        assert not any(res.equal_matrix(psi, perm) for perm in perms)

    def test_commuting_squares(self, system_factory):
        system = system_factory("B3")
        for lmask in (0b001, 0b011, 0b101, 0b111):
            assert mo.commuting_square_check(system, 0b001, lmask)
        # degenerate corner: empty K
        assert mo.commuting_square_check(system, 0, 0b011)


@pytest.mark.skipif(not os.environ.get("DESCENT_E7"),
                    reason="rank-7 quotient is minutes of work; "
                           "set DESCENT_E7=1 to include it")
def test_e7_quotient_lands_in_f4():
    ctx = mo.e7_f4_quotient()
    assert ctx.quotient.type_label == "F4"
    assert mo.varpi_tau_check(ctx.system, ctx)
