from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from core.charges import Charge, charge_from_measure
from core.errors import IncompatibleSpaces, NotAbsolutelyContinuous, NotPositive
from core.integration import (
    StandardRep, StepFunction, J, J_hom_check, elementary_integral, integral, integral_bound_check,
    integral_sup_oracle, integral_two_term, integrals_of_components, sombrero_check, step_ops,
    to_standard, well_definedness_witness,
)
from core.suites.integration import counterexample_charge
from tests.strategies import charges, cond_exps, vectors


class TestStepFunctions:
    def test_padding_to_standard(self, T):
        x = StepFunction.of(T, (T.space.unit, T.space.component(1)))
        standard = to_standard(x)
        assert standard.terms[-1] == (T.space.zero, T.space.component(2, 3))
        assert standard.realize() == x.realize()

    def test_standard_rep_must_cover(self, T):
        with pytest.raises(IncompatibleSpaces):
            StandardRep(T, ((T.space.unit, T.space.component(1)),))

    def test_overlapping_components(self, T):
        with pytest.raises(IncompatibleSpaces):
            StepFunction.of(T, (T.space.unit, T.space.component(1, 2)),
                            (T.space.unit, T.space.component(2)))

    def test_coefficients_in_range(self, T):
        with pytest.raises(ValueError):
            StepFunction.of(T, (T.space.vector(1, 2, 0), T.space.component(1)))

    def test_common_refinement(self, T):
        e = T.space.unit
        x = StepFunction.of(T, (e, T.space.component(1, 2)))
        y = StepFunction.of(T, (e * 2, T.space.component(2, 3)))
        gamma = T.space.vector(-1, -1, 3)
        ops = step_ops(x, y, gamma)
        assert ops.sum.realize() == T.space.vector(1, 3, 2)
        assert ops.sum.is_standard()
        assert ops.scale.realize() == T.space.vector(-1, -1, 0)
        assert ops.abs.realize() == x.realize()


class TestElementaryIntegral:
    def test_atom_indicator(self, T):
        mu = Charge.from_rows(T, [[1, 1, 0], [1, 1, 0], [0, 0, 2]])
        x = StepFunction.of(T, (T.space.unit, T.space.component(1)))
        assert elementary_integral(mu, x) == T.space.vector(1, 1, 0)

    def test_needs_absolute_continuity(self, mixed_charge, T):
        x = StepFunction.of(T, (T.space.unit, T.space.component(1)))
        with pytest.raises(NotAbsolutelyContinuous) as info:
            elementary_integral(mixed_charge, x)
        assert info.value.witness == T.space.component(1)

    def test_representation_dependence(self, T):
        mu = counterexample_charge(T)
        x = StepFunction.of(T, (T.space.unit, T.space.component(1)))
        report = well_definedness_witness(mu, x, trials=0)
        assert not report.agree
        base, base_value, other, other_value = report.witness
        assert base_value == T.space.vector(0, 0, 1)
        assert other_value == T.space.zero
        assert base.realize() == other.realize()

    @given(st.data())
    @hsettings(max_examples=30)
    def test_well_defined_for_absolutely_continuous(self, data):
        T = data.draw(cond_exps())
        mu = data.draw(charges(T, absolutely_continuous=True))
        x = StepFunction.from_vector(T, data.draw(vectors(T.space)))
        assert well_definedness_witness(mu, x, trials=5, seed=1).agree


class TestGeneralIntegral:
    def test_components(self, signed_charge):
        for p, value, mass in integrals_of_components(signed_charge):
            assert value == mass

    def test_measure_charge_integrates_to_T(self, T):
        f = T.space.vector(4, -2, 5)
        assert integral(charge_from_measure(T), f) == T(f)
        assert J(charge_from_measure(T))(f) == T(f)

    def test_needs_absolute_continuity(self, mixed_charge, T):
        with pytest.raises(NotAbsolutelyContinuous):
            integral(mixed_charge, T.space.unit)

    @given(st.data())
    @hsettings(max_examples=30)
    def test_two_forms_agree(self, data):
        T = data.draw(cond_exps())
        mu = data.draw(charges(T, absolutely_continuous=True))
        f, g = data.draw(vectors(T.space)), data.draw(vectors(T.space))
        assert integral(mu, f) == integral_two_term(mu, f)
        assert integral(mu, f + g) == integral(mu, f) + integral(mu, g)
        assert integral_bound_check(mu, f)

    @given(st.data())
    @hsettings(max_examples=20)
    def test_sup_over_dominated_steps(self, data):
        T = data.draw(cond_exps(max_size=3))
        mu = data.draw(charges(T, absolutely_continuous=True))
        positive = Charge(T, tuple(value.abs() for value in mu.atom_values))
        f = data.draw(vectors(T.space, positive=True))
        assert integral_sup_oracle(positive, f, levels=2) == integral(positive, f)


class TestSombrero:
    def test_reference_vector(self, T):
        f = T.space.vector(Fraction(1, 3), Fraction(2, 3), 1)
        report = sombrero_check(charge_from_measure(T), f, 4)
        assert report.alpha == T.space.vector(Fraction(2, 3), Fraction(2, 3), 1)
        assert report.integral == T(f)
        assert len(report.stages) == 4
        assert report.passed

    def test_zero_vector(self, T):
        report = sombrero_check(charge_from_measure(T), T.space.zero, 3)
        assert report.passed
        assert report.integral.is_zero()

    def test_negative_vector(self, T):
        with pytest.raises(NotPositive):
            sombrero_check(charge_from_measure(T), T.space.vector(-1, 0, 0), 2)

    def test_signed_charge(self, signed_charge, T):
        with pytest.raises(NotPositive):
            sombrero_check(signed_charge, T.space.unit, 2)

    @given(st.data())
    @hsettings(max_examples=30)
    def test_random_models(self, data):
        T = data.draw(cond_exps())
        mu = data.draw(charges(T, absolutely_continuous=True))
        positive = Charge(T, tuple(value.abs() for value in mu.atom_values))
        f = data.draw(vectors(T.space, positive=True))
        assert sombrero_check(positive, f, 5).passed


class TestRieszHomomorphism:
    def test_signed_and_measure_charges(self, signed_charge, T):
        report = J_hom_check(signed_charge, charge_from_measure(T), [T.space.vector(4, -2, 5)])
        assert report.passed
        assert not report.failures

    def test_needs_absolute_continuity(self, mixed_charge, signed_charge):
        with pytest.raises(NotAbsolutelyContinuous):
            J_hom_check(mixed_charge, signed_charge)

    @given(st.data())
    @hsettings(max_examples=20)
    def test_random_charges(self, data):
        T = data.draw(cond_exps(max_size=3))
        mu = data.draw(charges(T, absolutely_continuous=True))
        nu = data.draw(charges(T, absolutely_continuous=True))
        assert J_hom_check(mu, nu).passed
