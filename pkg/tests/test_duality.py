import numpy as np
import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from core.charges import charge_from_measure, charge_norm
from core.cond_exp import INF, norm_Tinf, norm_Tp_pow
from core.duality import (
    KernelFunctional, RawFunctional, charge_to_linfty, conjecture_probe, conjecture_sweep,
    dual_ideal_check, dual_norm, dual_norm_axioms, dual_norm_representations, functional_lattice,
    functional_lattice_oracle, homogeneity_witness, l1_recover, l1_representation, l2_recover,
    l2_representation, linfty_to_charge, positive_part_by_oracle, probe_instance,
    product_decomposition,
)
from core.errors import (
    InvalidExponent, NotAbsolutelyContinuous, NotHomogeneous, Unsupported,
)
from tests.strategies import charges, cond_exps, range_vectors, vectors


@pytest.fixture
def h(T):
    return T.space.vector(4, -2, 5)


@pytest.fixture
def foreign(T):
    """Образ 1_1 лежит на чужом блоке"""
    return RawFunctional.from_rows(T, [[0, 0, 1], [0, 0, 0], [0, 0, 0]])


class TestL1:
    def test_norm_is_inf_norm_of_kernel(self, T, h):
        phi = l1_representation(T, h)
        assert phi.columns()[0] == T.space.vector(2, 2, 0)
        assert dual_norm(phi, 1) == T.space.vector(4, 4, 5)
        assert dual_norm(phi, 1) == norm_Tinf(T, h)

    def test_recover_kernel(self, T, h):
        assert l1_recover(l1_representation(T, h)) == h
        assert l1_recover(RawFunctional.of(l1_representation(T, h))) == h

    def test_representations_agree(self, T, h):
        reps = dual_norm_representations(l1_representation(T, h), 1)
        assert reps.agree
        assert reps.infimum == T.space.vector(4, 4, 5)

    @given(st.data())
    @hsettings(max_examples=40)
    def test_random_kernels(self, data):
        T = data.draw(cond_exps())
        f = data.draw(vectors(T.space))
        phi = l1_representation(T, f)
        assert l1_recover(phi) == f
        assert dual_norm(phi, 1) == norm_Tinf(T, f)
        assert dual_norm_representations(phi, 1).agree


class TestL2:
    def test_norm_is_squared(self, T, h):
        phi = l2_representation(T, h)
        assert dual_norm(phi, 2) == T.space.vector(10, 10, 25)
        assert dual_norm(phi, 2) == norm_Tp_pow(T, h, 2)

    def test_raw_functional_needs_recovery(self, T, h):
        raw = RawFunctional.of(l2_representation(T, h))
        with pytest.raises(Unsupported):
            dual_norm(raw, 2)
        assert dual_norm(KernelFunctional(T, l2_recover(raw)), 2) == norm_Tp_pow(T, h, 2)

    def test_representations_agree(self, T, h):
        reps = dual_norm_representations(l2_representation(T, h), 2)
        assert reps.agree

    @given(st.data())
    @hsettings(max_examples=40)
    def test_random_kernels(self, data):
        T = data.draw(cond_exps())
        f = data.draw(vectors(T.space))
        phi = l2_representation(T, f)
        assert l2_recover(phi) == f
        assert dual_norm_representations(phi, 2).agree


class TestLinfty:
    def test_operator_itself(self, T):
        phi = KernelFunctional(T, T.space.unit)
        mu = linfty_to_charge(phi)
        assert mu == charge_from_measure(T)
        assert dual_norm(phi, INF) == T.space.unit
        assert charge_norm(mu) == T.space.unit
        assert charge_to_linfty(mu).same_action(phi)

    def test_signed_charge(self, signed_charge, T):
        phi = charge_to_linfty(signed_charge)
        assert dual_norm(phi, INF) == charge_norm(signed_charge)
        assert linfty_to_charge(phi) == signed_charge
        assert dual_norm_representations(phi, INF).agree

    def test_integration_needs_absolute_continuity(self, mixed_charge):
        with pytest.raises(NotAbsolutelyContinuous):
            charge_to_linfty(mixed_charge)

    @given(st.data())
    @hsettings(max_examples=30)
    def test_random_charges(self, data):
        T = data.draw(cond_exps(max_size=3))
        mu = data.draw(charges(T, absolutely_continuous=True))
        phi = charge_to_linfty(mu)
        assert linfty_to_charge(phi) == mu
        assert dual_norm(phi, INF) == charge_norm(mu)


class TestHomogeneity:
    def test_witness(self, T, foreign):
        g, f = homogeneity_witness(foreign)
        assert g == T.space.vector(1, 1, 0)
        assert f == T.space.vector(1, 0, 0)
        assert foreign(g * f) != g * foreign(f)

    def test_norm_rejects(self, foreign):
        with pytest.raises(NotHomogeneous):
            dual_norm(foreign, 1)
        with pytest.raises(NotHomogeneous):
            linfty_to_charge(foreign)

    def test_kernels_are_homogeneous(self, T, h):
        assert homogeneity_witness(l1_representation(T, h)) is None

    def test_invalid_exponent(self, T, h):
        with pytest.raises(InvalidExponent):
            dual_norm(l1_representation(T, h), 3)


class TestLattice:
    @given(st.data())
    @hsettings(max_examples=30)
    def test_closed_forms_match_oracle(self, data):
        T = data.draw(cond_exps(max_size=3))
        phi = l1_representation(T, data.draw(vectors(T.space)))
        psi = l1_representation(T, data.draw(vectors(T.space)))
        f = data.draw(vectors(T.space, positive=True))
        closed = functional_lattice(phi, psi)
        assert functional_lattice_oracle(phi, psi, f) == (closed.sup(f), closed.inf(f), closed.abs(f))

    def test_positive_part_by_grid(self, T, h):
        phi = l1_representation(T, h)
        assert positive_part_by_oracle(phi).same_action(functional_lattice(phi, phi).pos)

    def test_modulus_of_kernel(self, T, h):
        phi = l1_representation(T, h)
        assert functional_lattice(phi, phi).abs.same_action(l1_representation(T, h.abs()))


class TestNormAxioms:
    @given(st.data())
    @hsettings(max_examples=30)
    def test_axioms(self, data):
        T = data.draw(cond_exps(max_size=3))
        phi = l1_representation(T, data.draw(vectors(T.space)))
        psi = l1_representation(T, data.draw(vectors(T.space)))
        g = data.draw(range_vectors(T))
        for p in (1, 2, INF):
            assert dual_norm_axioms(phi, psi, g, p).passed

    @given(st.data())
    @hsettings(max_examples=30)
    def test_dominated_functional_inherits_bound(self, data):
        T = data.draw(cond_exps(max_size=3))
        f = data.draw(vectors(T.space))
        phi, psi = l1_representation(T, f), l1_representation(T, f.abs() * 2)
        for p in (1, 2, INF):
            report = dual_ideal_check(phi, psi, p)
            assert report.dominated
            assert report.passed


class TestProduct:
    def test_blocks(self, T):
        decomposition = product_decomposition(T)
        assert [len(triple.points) for triple in decomposition.triples] == [2, 1]
        assert decomposition.triples[1].space.weights == (2,)

    def test_product_norm(self, T, h):
        decomposition = product_decomposition(T)
        phi = l1_representation(T, h)
        parts = decomposition.split_functional(phi)
        assert decomposition.product_norm(parts, 1) == T.space.vector(4, 4, 5)
        assert decomposition.product_norm(parts, INF) == dual_norm(phi, INF)
        assert decomposition.assemble_functional(parts).same_action(phi)

    def test_scalar_action_on_block(self, T, h):
        decomposition = product_decomposition(T)
        first = decomposition.triples[0]
        part = decomposition.split_functional(l1_representation(T, h))[0]
        # T_1(h·f) на блоке {1,2} с весами 1, 1: (4 - 2)/2
        assert first.scalar_action(part, first.space.unit) == 1

    def test_charges_round_trip(self, signed_charge, T):
        decomposition = product_decomposition(T)
        parts = decomposition.split_charge(signed_charge)
        assert parts[1].atom(1).values == (1,)
        assert decomposition.assemble_charge(parts) == signed_charge

    def test_p2_is_not_assembled(self, T, h):
        decomposition = product_decomposition(T)
        with pytest.raises(InvalidExponent):
            decomposition.product_norm(decomposition.split_functional(l1_representation(T, h)), 2)


class TestConjectureProbe:
    def test_p2_matches_closed_form(self, T, h):
        probe = probe_instance(T, h, 2, 4, np.random.default_rng(7))
        assert probe.gap < 1e-6
        assert probe.exact[1] == pytest.approx(5.0)

    def test_p2_exact_side_is_dual_norm(self, T, h):
        probe = probe_instance(T, h, 2, 2, np.random.default_rng(1))
        squared = dual_norm(l2_representation(T, h), 2)
        assert probe.exact == pytest.approx((np.sqrt(10.0), 5.0))
        assert probe.exact[0] ** 2 == pytest.approx(float(squared.at(1)))

    def test_p_must_exceed_one(self, T):
        with pytest.raises(InvalidExponent):
            conjecture_probe(T, 1)
        with pytest.raises(InvalidExponent):
            conjecture_sweep(1)

    def test_sweep_is_reproducible(self):
        first = conjecture_sweep(2, instances=2, restarts=3, seed=5, max_omega=3)
        second = conjecture_sweep(2, instances=2, restarts=3, seed=5, max_omega=3)
        assert len(first.instances) == 2
        assert first.q == 2.0
        assert first.max_gap == second.max_gap
        assert [i.f for i in first.instances] == [i.f for i in second.instances]
