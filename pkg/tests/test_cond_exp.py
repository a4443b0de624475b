from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.cond_exp import (
    INF, CondExp, DegenerateCondExp, Partition, band_projection_in_range, check_proj_ineq,
    holder_product, is_T_universally_complete, make_cond_exp, norm_Tinf, norm_Tp, norm_Tp_pow,
    null_ideal_reduction, triangle_certificate, verify_cond_exp_axioms,
)
from core.errors import InvalidPartition, NonPositiveWeight, NonRationalRoot, NotPositive
from core.lattice import FiniteSpace, band_projection, unit_projection
from tests.strategies import cond_exps, models, range_vectors, vectors


class TestOperator:
    def test_averaging_formula(self, T):
        assert T(T.space.vector(4, 2, 5)) == T.space.vector(3, 3, 5)

    def test_singleton_block(self, T):
        assert T(T.space.vector(0, 0, 1)) == T.space.vector(0, 0, 1)

    def test_kills_nonzero_vector(self, T):
        assert T(T.space.vector(1, -1, 0)).is_zero()

    def test_singletons_are_identity(self, space):
        identity = make_cond_exp(space, Partition.singletons(space))
        f = space.vector(4, -2, 5)
        assert identity(f) == f

    def test_overlapping_blocks(self, space):
        with pytest.raises(InvalidPartition):
            Partition.of(space, [[1, 2], [2, 3]])

    def test_uncovered_point(self, space):
        with pytest.raises(InvalidPartition):
            Partition.of(space, [[1, 2]])

    def test_degenerate_weights_need_reduction(self):
        space = FiniteSpace((Fraction(0), Fraction(1)), allow_null=True)
        with pytest.raises(NonPositiveWeight):
            make_cond_exp(space, Partition.trivial(space))

    def test_universal_completeness(self, T):
        assert is_T_universally_complete(T)

    def test_str(self, T):
        assert str(T) == "T[{1,2} | {3}; masses 2, 2]"


class TestAxioms:
    def test_reference_passes(self, T):
        assert verify_cond_exp_axioms(T).passed

    def test_identity_passes(self, space):
        assert verify_cond_exp_axioms(make_cond_exp(space, Partition.singletons(space))).passed

    def test_doubled_masses_fail_unit(self, T):
        corrupted = CondExp(T.partition, tuple(m * 2 for m in T.block_masses))
        report = verify_cond_exp_axioms(corrupted)
        assert not report.passed
        assert not report.get("unit").passed

    @given(cond_exps())
    def test_random_operators_pass(self, T):
        assert verify_cond_exp_axioms(T).passed

    @given(st.data())
    def test_averaging_property(self, data):
        T = data.draw(cond_exps())
        f = data.draw(vectors(T.space))
        alpha = data.draw(range_vectors(T))
        assert T(alpha * f) == alpha * T(f)


class TestNullIdeal:
    def test_zero_weight_point(self):
        space = FiniteSpace((Fraction(1), Fraction(0), Fraction(2)), allow_null=True)
        reduction = null_ideal_reduction(
            DegenerateCondExp(space, Partition.of(space, [[1, 2], [3]]))
        )
        assert reduction.null_ideal.points == (2,)
        assert reduction.carrier.points == (1, 3)
        assert [block.points for block in reduction.reduced.blocks] == [(1,), (2,)]

    def test_whole_block_is_null(self):
        space = FiniteSpace((Fraction(0), Fraction(0), Fraction(1)), allow_null=True)
        reduction = null_ideal_reduction(
            DegenerateCondExp(space, Partition.of(space, [[1, 2], [3]]))
        )
        assert reduction.null_ideal.points == (1, 2)
        assert len(reduction.reduced.blocks) == 1

    def test_positive_weights_keep_operator(self, T):
        reduction = null_ideal_reduction(DegenerateCondExp(T.space, T.partition))
        assert reduction.null_ideal.is_empty()
        assert reduction.reduced == T

    def test_carrier_round_trip(self):
        space = FiniteSpace((Fraction(1), Fraction(0), Fraction(2)), allow_null=True)
        reduction = null_ideal_reduction(DegenerateCondExp(space, Partition.trivial(space)))
        f = space.vector(4, 7, 5)
        restricted = reduction.restrict_to_carrier(f)
        assert restricted.values == (Fraction(4), Fraction(5))
        assert reduction.extend_from_carrier(restricted) == reduction.quotient_representative(f)
        assert reduction.quotient_representative(f) == space.vector(4, 0, 5)


class TestNorms:
    def test_p1(self, T):
        assert norm_Tp(T, T.space.vector(4, -2, 5), 1) == T.space.vector(3, 3, 5)

    def test_p2_power_and_irrational_root(self, T):
        f = T.space.vector(4, -2, 5)
        assert norm_Tp_pow(T, f, 2) == T.space.vector(10, 10, 25)
        with pytest.raises(NonRationalRoot):
            norm_Tp(T, f, 2)

    def test_zero(self, T):
        for p in (1, 2, 3):
            assert norm_Tp_pow(T, T.space.zero, p).is_zero()
        assert norm_Tinf(T, T.space.zero).is_zero()

    def test_inf_norm(self, T):
        assert norm_Tinf(T, T.space.vector(4, -2, 5)) == T.space.vector(4, 4, 5)
        assert norm_Tinf(T, T.space.unit) == T.space.unit

    def test_inf_norm_of_component(self, T):
        p = T.space.component(1)
        assert norm_Tinf(T, p.vector) == T.space.vector(1, 1, 0)
        assert norm_Tinf(T, p.vector) == unit_projection(T(p.vector))

    def test_holder_with_unit(self, T):
        f = T.space.vector(4, -2, 5)
        result = holder_product(T, f, T.space.unit, 1)
        assert result.lhs == norm_Tp_pow(T, f, 1)
        assert result.certificate.equality

    def test_holder_p3_rational_roots(self, T):
        f, g = T.space.vector(1, 2, 1), T.space.vector(4, 1, 0)
        result = holder_product(T, f, g, 3)
        assert result.lhs == T.space.vector(3, 3, 0)
        assert result.certificate.holds

    def test_holder_p3_irrational_root(self, T):
        with pytest.raises(NonRationalRoot):
            holder_product(T, T.space.vector(1, 2, 1), T.space.vector(2, 1, 1), 3)

    def test_holder_disjoint(self, T):
        f, g = T.space.vector(1, 0, 0), T.space.vector(0, 1, 0)
        for p in (1, 2, INF):
            result = holder_product(T, f, g, p)
            assert result.lhs.is_zero()
            assert result.certificate.holds

    @given(models())
    def test_holder_and_triangle(self, model):
        T, f, g = model
        for p in (1, 2, INF):
            assert holder_product(T, f, g, p).certificate.holds
            assert triangle_certificate(T, f, g, p)

    @given(st.data())
    def test_order_continuity(self, data):
        T = data.draw(cond_exps())
        f = data.draw(vectors(T.space))
        for k in range(1, 6):
            assert norm_Tinf(T, f / 2 ** k) == norm_Tinf(T, f) / 2 ** k
            assert norm_Tp_pow(T, f / 2 ** k, 1) == norm_Tp_pow(T, f, 1) / 2 ** k


class TestProjectionLemmas:
    def test_proj_ineq(self, T):
        assert check_proj_ineq(T, T.space.vector(1, 0, 0))
        assert check_proj_ineq(T, T.space.zero)
        assert check_proj_ineq(T, T.space.unit)

    def test_proj_ineq_needs_positive(self, T):
        with pytest.raises(NotPositive):
            check_proj_ineq(T, T.space.vector(-1, 0, 0))

    @given(st.data())
    def test_range_and_ambient_projections_agree(self, data):
        T = data.draw(cond_exps())
        alpha, g = data.draw(range_vectors(T)), data.draw(range_vectors(T))
        assert band_projection_in_range(T, alpha, g) == band_projection(alpha, g)

    def test_band_invariance_example(self, T):
        alpha = T.space.vector(0, 0, 3)
        u = T.space.vector(5, 1, 2).inf(alpha * T.space.vector(1, 1, 1))
        assert u == T.space.vector(0, 0, 2)
        assert unit_projection(alpha) * u == u

    @given(st.data())
    def test_band_invariance(self, data):
        T = data.draw(cond_exps())
        alpha = data.draw(range_vectors(T)).abs()
        h = data.draw(vectors(T.space, positive=True))
        g = data.draw(vectors(T.space, positive=True))
        u = h.inf(alpha * g)
        assert T.space.zero <= u <= alpha * g
        assert unit_projection(alpha) * u == u
        assert band_projection(alpha, u) == u

    def test_band_invariance_needs_domination(self, T):
        alpha = T.space.vector(0, 0, 3)
        u = T.space.vector(1, 0, 2)
        assert unit_projection(alpha) * u != u


class TestMonotonicity:
    def test_example(self, T):
        f, bigger = T.space.vector(1, -1, 2), T.space.vector(2, 1, 2)
        assert norm_Tp_pow(T, f, 2) == T.space.vector(1, 1, 4)
        assert norm_Tp_pow(T, bigger, 2) == T.space.vector(Fraction(5, 2), Fraction(5, 2), 4)
        assert norm_Tinf(T, f) <= norm_Tinf(T, bigger)

    @given(st.data())
    def test_dominated_vectors(self, data):
        T = data.draw(cond_exps())
        f = data.draw(vectors(T.space))
        bigger = f.abs() + data.draw(vectors(T.space, positive=True))
        for p in (1, 2, 3):
            assert norm_Tp_pow(T, f, p) <= norm_Tp_pow(T, bigger, p)
        assert norm_Tinf(T, f) <= norm_Tinf(T, bigger)
