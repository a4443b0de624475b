from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from core.errors import IncompatibleSpaces, NonPositiveWeight, NonRationalRoot, NotDominated
from core.lattice import (
    Component, FiniteSpace, RealizedStep, as_fraction, band_projection,
    band_projection_complement, component_algebra, dominating_scale, exact_root,
    freudenthal_sequence, is_component, lattice_ops, partial_inverse, power, unit_projection,
)
from core.oracles import positive_part_oracle, set_partitions
from tests.strategies import cond_exps, vectors


@pytest.fixture
def E3():
    return FiniteSpace.of(1, 1, 1)


class TestVectorLattice:
    def test_sup_and_parts(self, E3):
        f, g = E3.vector(1, -2, 3), E3.zero
        ops = lattice_ops(f, g)
        assert ops.sup == E3.vector(1, 0, 3)
        assert ops.pos == E3.vector(1, 0, 3)
        assert ops.neg == E3.vector(0, 2, 0)

    def test_abs(self, E3):
        assert E3.vector(4, -2, 5).abs() == E3.vector(4, 2, 5)

    def test_sup_plus_inf(self, E3):
        f, g = E3.vector(1, 2, 3), E3.vector(3, 2, 1)
        ops = lattice_ops(f, g)
        assert ops.inf == E3.vector(1, 2, 1)
        assert ops.sup + ops.inf == f + g

    def test_mismatched_spaces(self, E3):
        with pytest.raises(IncompatibleSpaces):
            lattice_ops(E3.unit, FiniteSpace.of(1, 2).unit)

    def test_float_scalars_rejected(self, E3):
        with pytest.raises(TypeError):
            E3.vector(0.5, 1, 1)

    @pytest.mark.parametrize("text", ["1.5", "1e3", "0.5/1", "nan"])
    def test_decimal_strings_rejected(self, text):
        with pytest.raises(TypeError):
            as_fraction(text)

    def test_exact_scalars(self, E3):
        assert as_fraction(" -3/4 ") == Fraction(-3, 4)
        assert as_fraction(7) == Fraction(7)
        assert E3.vector("1/3", 2, Fraction(1, 2)).values == (Fraction(1, 3), 2, Fraction(1, 2))

    def test_non_positive_weight(self):
        with pytest.raises(NonPositiveWeight):
            FiniteSpace.of(1, 0, 2)

    @given(st.data())
    def test_riesz_identities(self, data):
        T = data.draw(cond_exps())
        f, g, h = (data.draw(vectors(T.space)) for _ in range(3))
        assert f.sup(g) + f.inf(g) == f + g
        assert f.pos() - f.neg() == f
        assert f.pos() + f.neg() == f.abs()
        assert f.sup(g.inf(h)) == f.sup(g).inf(f.sup(h))
        assert (f + h).sup(g + h) == f.sup(g) + h


class TestProjections:
    def test_restriction_to_support(self, E3):
        assert band_projection(E3.vector(0, 1, 0), E3.vector(5, 7, 9)) == E3.vector(0, 7, 0)

    def test_unit_projection_is_component(self, E3):
        projection = unit_projection(E3.vector(2, 0, 3))
        assert projection == E3.vector(1, 0, 1)
        assert is_component(projection)

    @given(st.data())
    def test_band_decomposition(self, data):
        T = data.draw(cond_exps())
        f, g = data.draw(vectors(T.space)), data.draw(vectors(T.space))
        assert band_projection(f, g) + band_projection_complement(f, g) == g
        assert band_projection(f, band_projection(f, g)) == band_projection(f, g)


class TestPartialInverse:
    def test_reciprocal_on_support(self, E3):
        f = E3.vector(2, 0, -4)
        inverse = partial_inverse(f)
        assert inverse == E3.vector(Fraction(1, 2), 0, Fraction(-1, 4))
        assert f * inverse == E3.vector(1, 0, 1)

    def test_zero_and_unit(self, E3):
        assert partial_inverse(E3.zero) == E3.zero
        assert partial_inverse(E3.unit) == E3.unit


class TestPowers:
    def test_square_root_of_squares(self, E3):
        assert power(E3.vector(4, 9, 0), Fraction(1, 2)) == E3.vector(2, 3, 0)

    def test_square(self, E3):
        assert power(E3.vector(4, -2, 5), 2) == E3.vector(16, 4, 25)

    def test_irrational_root(self, E3):
        with pytest.raises(NonRationalRoot):
            power(E3.vector(2, 1, 1), Fraction(1, 2))

    def test_float_mode(self, E3):
        root = power(E3.vector(2, 1, 1), Fraction(1, 2), mode="float")
        assert abs(root.values[0] - 2 ** 0.5) < 1e-12

    def test_exact_root_of_fraction(self):
        assert exact_root(Fraction(8, 27), 3) == Fraction(2, 3)


class TestComponents:
    def test_set_algebra(self, E3):
        p, q = E3.component(1, 2), E3.component(2, 3)
        algebra = component_algebra(p, q)
        assert algebra.meet == E3.component(2)
        assert algebra.join == E3.full
        assert algebra.complement == E3.component(3)

    def test_neutral_and_difference(self, E3):
        for q in E3.components():
            assert E3.empty.join(q) == q
            assert q.difference(q).is_empty()

    def test_str(self, E3):
        assert str(E3.component(1, 3)) == "{1,3}"

    def test_sub_components_count(self, E3):
        assert len(list(E3.component(1, 3).sub_components())) == 4

    def test_set_partitions_of_three_points(self):
        assert len(list(set_partitions([1, 2, 3]))) == 5


class TestFreudenthal:
    def test_step_function_is_exact(self, E3):
        steps = freudenthal_sequence(E3.unit, E3.unit, 3)
        assert steps[-1].realize() == E3.unit

    def test_dyadic_floor(self, E3):
        f = E3.vector(Fraction(1, 3), Fraction(2, 3), 1)
        steps = freudenthal_sequence(f, E3.unit, 2)
        s2 = steps[1].realize()
        assert s2 == E3.vector(Fraction(1, 4), Fraction(1, 2), 1)
        assert f - s2 <= E3.unit * Fraction(1, 4)

    def test_zero(self, E3):
        assert all(s.realize() == E3.zero for s in freudenthal_sequence(E3.zero, E3.unit, 3))

    def test_not_dominated(self, E3):
        with pytest.raises(NotDominated):
            dominating_scale(E3.vector(1, 1, 1), E3.vector(1, 0, 1))

    def test_level_sets(self, E3):
        step = RealizedStep.from_vector(E3.vector(2, 0, 2))
        assert step.coefficients == ((Fraction(2), Component(E3, 0b101)),)

    @given(st.data())
    @hsettings(max_examples=30)
    def test_monotone_uniform_approximation(self, data):
        T = data.draw(cond_exps())
        f = data.draw(vectors(T.space, positive=True))
        c = max(f.values)
        realized = [s.realize() for s in freudenthal_sequence(f, T.space.unit, 5)]
        for j, s in enumerate(realized, start=1):
            assert s <= f
            assert f - s <= T.space.unit * (c / 2 ** j)
        assert all(a <= b for a, b in zip(realized, realized[1:]))


class TestRieszKantorovich:
    def test_positive_operator_is_its_own_positive_part(self, T):
        f = T.space.vector(1, 2, 3)
        assert positive_part_oracle(T, f) == T(f)

    def test_shifted_operator(self, T):
        shifted = lambda v: T(v) - v  # noqa: E731
        f = T.space.vector(1, 2, 3)
        closed = T.space.zero
        for atom in T.space.atoms():
            closed = closed + shifted(atom.vector).pos() * f.at(atom.points[0])
        assert positive_part_oracle(shifted, f) == closed
