from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from core.charges import (
    Charge, LebesgueParts, RawChargeTable, change_of_unit, charge_from_measure, charge_lattice,
    charge_lattice_oracle, charge_norm, directed_supremum, eval_charge, is_T_abs_continuous,
    is_T_abs_continuous_by_components, lebesgue_certificate, lebesgue_decomposition,
    unit_component, validate_raw_charge, variation_attainers, variation_norm, weight_charge,
)
from core.errors import (
    InvalidUnit, MissingComponent, NotAbsolutelyContinuous, NotAdditive, NotDominated,
)
from tests.strategies import cond_exps, charges, range_vectors


class TestRawTables:
    def test_weight_charge_is_valid(self, T):
        mu = weight_charge(T)
        table = RawChargeTable.from_charge(mu)
        assert table.table[T.space.component(1, 3)] == T.space.unit * 3
        assert validate_raw_charge(table) == mu

    def test_non_additive_witness(self, T):
        table = RawChargeTable.from_charge(weight_charge(T))
        pair = T.space.component(1, 2)
        with pytest.raises(NotAdditive) as info:
            validate_raw_charge(table.with_value(pair, T.space.unit * 5))
        assert info.value.witness == (T.space.component(1), T.space.component(2))

    def test_missing_component(self, T):
        table = RawChargeTable.from_charge(weight_charge(T))
        with pytest.raises(MissingComponent):
            validate_raw_charge(table.without(T.space.component(2)))

    def test_zero_table(self, T):
        table = RawChargeTable(T, {p: T.space.zero for p in T.space.components()})
        assert validate_raw_charge(table).is_zero()


class TestEvaluation:
    def test_additivity(self, signed_charge, T):
        mu = signed_charge
        assert eval_charge(mu, T.space.component(1, 3)) == mu.atom(1) + mu.atom(3)
        assert mu(T.space.empty).is_zero()
        assert mu.total == mu.atom(1) + mu.atom(2) + mu.atom(3)

    def test_measure_charge(self, T):
        mu = charge_from_measure(T)
        for p in T.space.components():
            assert mu(p) == T(p.vector)


class TestLattice:
    def test_positive_charge(self, T):
        parts = charge_lattice(weight_charge(T), weight_charge(T))
        assert parts.pos == weight_charge(T)
        assert parts.neg.is_zero()

    def test_norm_of_signed_charge(self, T):
        mu = Charge.from_rows(T, [[-1, -1, 0], [2, 2, 0], [0, 0, 1]])
        assert charge_norm(mu) == T.space.vector(3, 3, 1)
        assert charge_lattice_oracle(mu, mu, T.space.full).abs == T.space.vector(3, 3, 1)

    def test_lattice_and_verdict_are_cached(self, signed_charge):
        assert signed_charge.lattice is signed_charge.lattice
        assert signed_charge.abs_continuity is signed_charge.abs_continuity
        assert signed_charge.abs_continuity.holds
        assert charge_norm(signed_charge) == signed_charge.lattice.abs.total

    def test_norm_of_zero_and_positive(self, T):
        assert charge_norm(Charge.zero(T)).is_zero()
        assert charge_norm(weight_charge(T)) == weight_charge(T).total

    @given(st.data())
    @hsettings(max_examples=40)
    def test_closed_forms_match_oracle(self, data):
        T = data.draw(cond_exps())
        mu, nu = data.draw(charges(T)), data.draw(charges(T))
        closed = charge_lattice(mu, nu)
        for p in T.space.components():
            oracle = charge_lattice_oracle(mu, nu, p)
            assert oracle.sup == closed.sup(p)
            assert oracle.inf == closed.inf(p)
            assert oracle.abs == closed.abs(p)
            assert oracle.pos == closed.pos(p)
            assert oracle.neg == closed.neg(p)

    @given(st.data())
    @hsettings(max_examples=40)
    def test_variation_norm(self, data):
        T = data.draw(cond_exps())
        mu = data.draw(charges(T))
        assert variation_norm(mu) == charge_norm(mu)

    def test_singletons_attain_variation(self, signed_charge, T):
        singletons = [T.space.atom(point) for point in T.space.points]
        assert singletons in variation_attainers(signed_charge)

    @given(st.data())
    def test_module_norm(self, data):
        T = data.draw(cond_exps())
        mu, nu = data.draw(charges(T)), data.draw(charges(T))
        g = data.draw(range_vectors(T))
        assert charge_norm(mu.scale(g)) == g.abs() * charge_norm(mu)
        assert charge_norm(mu + nu) <= charge_norm(mu) + charge_norm(nu)

    def test_directed_supremum(self, T):
        mu = weight_charge(T)
        chain = [mu.scale(Fraction(k, k + 1)) for k in range(1, 4)]
        assert directed_supremum(chain) == mu.scale(Fraction(3, 4))

    def test_directed_supremum_approaches_bound(self, signed_charge):
        modulus = signed_charge.lattice.abs
        chain = [modulus.scale(1 - Fraction(1, 2 ** k)) for k in range(1, 7)]
        top = directed_supremum(chain)
        assert all(c <= top for c in chain)
        assert top <= modulus
        assert charge_norm(modulus - top) == charge_norm(signed_charge) / 64
        with pytest.raises(NotDominated):
            directed_supremum(chain[::-1])

    def test_directed_supremum_needs_increasing(self, T):
        mu = weight_charge(T)
        with pytest.raises(NotDominated):
            directed_supremum([mu, mu.scale(Fraction(1, 2))])


class TestUnits:
    def test_identity_change(self, signed_charge, T):
        assert change_of_unit(signed_charge, T.space.unit) == signed_charge

    def test_doubled_unit(self, signed_charge, T):
        e2 = T.space.unit * 2
        moved = change_of_unit(signed_charge, e2)
        p = T.space.component(1, 3)
        q = unit_component(e2, p)
        assert q == T.space.vector(2, 0, 2)
        assert q.support == p
        assert moved.at_unit_component(q) == signed_charge(p)
        assert change_of_unit(moved, T.space.unit) == signed_charge

    def test_unit_must_be_in_range(self, signed_charge, T):
        with pytest.raises(InvalidUnit):
            change_of_unit(signed_charge, T.space.vector(1, 2, 1))

    def test_unit_must_be_positive(self, signed_charge, T):
        with pytest.raises(InvalidUnit):
            change_of_unit(signed_charge, T.space.vector(1, 1, 0))


class TestAbsoluteContinuity:
    def test_block_supported_atoms(self, signed_charge):
        assert is_T_abs_continuous(signed_charge)

    def test_foreign_block_witness(self, mixed_charge, T):
        verdict = is_T_abs_continuous(mixed_charge)
        assert not verdict
        assert verdict.witness == T.space.component(1)
        assert not is_T_abs_continuous_by_components(mixed_charge)

    def test_zero_charge(self, T):
        assert is_T_abs_continuous(Charge.zero(T))

    @given(st.data())
    @hsettings(max_examples=40)
    def test_criteria_agree(self, data):
        T = data.draw(cond_exps())
        mu = data.draw(charges(T))
        assert is_T_abs_continuous(mu).holds == is_T_abs_continuous_by_components(mu).holds


class TestLebesgue:
    def test_mixed_charge(self, mixed_charge, T):
        parts = lebesgue_decomposition(mixed_charge)
        assert parts.absolutely_continuous.atom(1) == T.space.zero
        assert parts.singular.atom(1) == T.space.vector(0, 0, 1)
        assert parts.absolutely_continuous.atom(3) == T.space.vector(0, 0, 1)

    def test_absolutely_continuous_charge(self, signed_charge):
        parts = lebesgue_decomposition(signed_charge)
        assert parts.absolutely_continuous == signed_charge
        assert parts.singular.is_zero()

    @given(st.data())
    @hsettings(max_examples=40)
    def test_decomposition(self, data):
        T = data.draw(cond_exps())
        mu = data.draw(charges(T))
        ac, singular = lebesgue_decomposition(mu)
        assert ac + singular == mu
        assert is_T_abs_continuous(ac)
        assert charge_lattice(charge_lattice(ac, ac).abs, charge_lattice(singular, singular).abs).inf.is_zero()
        witness = data.draw(charges(T, absolutely_continuous=True))
        assert lebesgue_certificate(mu, (ac, singular), [witness]).passed
        modulus = mu.lattice.abs
        assert lebesgue_certificate(modulus, lebesgue_decomposition(modulus), [witness]).passed

    def test_certificate_of_mixed_charge(self, mixed_charge):
        certificate = lebesgue_certificate(mixed_charge, lebesgue_decomposition(mixed_charge))
        assert certificate.passed

    def test_singular_part_hiding_ac_mass(self, signed_charge, T):
        wrong = LebesgueParts(Charge.zero(T), signed_charge)
        certificate = lebesgue_certificate(signed_charge, wrong)
        assert certificate.sums_to_charge and certificate.ac_continuous
        assert certificate.singular_witness == charge_from_measure(T)
        assert not certificate.passed

    def test_ac_part_with_foreign_mass(self, mixed_charge, T):
        wrong = LebesgueParts(mixed_charge, Charge.zero(T))
        certificate = lebesgue_certificate(mixed_charge, wrong)
        assert not certificate.ac_continuous
        assert not certificate.passed

    def test_split_must_add_up(self, signed_charge):
        ac, singular = lebesgue_decomposition(signed_charge)
        assert not lebesgue_certificate(signed_charge, (ac.scale(2), singular)).passed

    def test_witnesses_must_be_absolutely_continuous(self, signed_charge, mixed_charge):
        with pytest.raises(NotAbsolutelyContinuous):
            lebesgue_certificate(signed_charge, lebesgue_decomposition(signed_charge),
                                 [mixed_charge])
