"""
Инварианты ядра решётки и условного ожидания
"""
from fractions import Fraction
from typing import Iterator

from core.cond_exp import (
    INF, CondExp, DegenerateCondExp, Partition, band_projection_in_range, check_proj_ineq, holder_product,
    norm_T, norm_Tinf, norm_Tp_pow, null_ideal_reduction, triangle_certificate,
    verify_cond_exp_axioms,
)
from core.instances import InstanceFactory
from core.lattice import (
    FiniteSpace, band_projection, band_projection_complement, component_algebra,
    freudenthal_sequence, lattice_ops, partial_inverse, power, unit_projection,
)
from core.oracles import positive_part_oracle
from core.suites.base import Outcome, Suite, guarded, outcome


class LatticeSuite(Suite):
    """Решёточные тождества, проекции, Фрейденталь, аксиомы T и нормы ‖·‖_{T,p}"""

    name = "lattice"

    def check_instance(self, T: CondExp, factory: InstanceFactory) -> Iterator[Outcome]:
        space = T.space
        f, g = factory.vector(space), factory.vector(space)
        h = factory.vector(space, positive=True)
        alpha = factory.range_vector(T, positive=True)
        p, q = factory.component(space), factory.component(space)

        def identities():
            ops = lattice_ops(f, g)
            ok = (f + g == ops.sup + ops.inf and ops.abs == f.sup(-f)
                  and ops.pos - ops.neg == f and ops.pos.inf(ops.neg) == space.zero
                  and f.sup(g.inf(h)) == f.sup(g).inf(f.sup(h)))
            return outcome("lattice_identities", ok, (f, g))

        def projections():
            pg = band_projection(f, h)
            ok = (band_projection(f, pg) == pg and space.zero <= pg <= h
                  and pg + band_projection_complement(f, h) == h
                  and band_projection(f, g + h) == band_projection(f, g) + pg)
            return outcome("band_projection", ok, (f, h))

        def inverses():
            inv = partial_inverse(f)
            ok = (f * inv == unit_projection(f.abs()) and f * inv * f == f
                  and partial_inverse(inv) == f and partial_inverse(h).is_positive())
            return outcome("partial_inverse", ok, f)

        def powers():
            return outcome("power_root_roundtrip", power(power(f, 2), Fraction(1, 2)) == f.abs(), f)

        def components():
            algebra = component_algebra(p, q)
            ok = (algebra.meet.vector == p.vector.inf(q.vector)
                  and algebra.join.vector == p.vector.sup(q.vector)
                  and algebra.complement.vector == space.unit - p.vector
                  and algebra.difference.vector == p.vector - algebra.meet.vector)
            return outcome("component_algebra", ok, (p, q))

        def freudenthal():
            steps = freudenthal_sequence(h, space.unit, 4)
            realized = [s.realize() for s in steps]
            c = max(h.values)
            ok = all(a <= b for a, b in zip(realized, realized[1:]))
            ok = ok and all(
                s <= h and h - s <= space.unit * (c / 2 ** j)
                for j, s in enumerate(realized, start=1)
            )
            return outcome("freudenthal", ok, h)

        def riesz_kantorovich():
            if space.size > 4:
                return outcome("riesz_kantorovich", True)
            shifted = lambda v: T(v) - v  # noqa: E731
            closed = space.zero
            for atom in space.atoms():
                closed = closed + shifted(atom.vector).pos() * h.at(atom.points[0])
            ok = positive_part_oracle(T, h) == T(h) and positive_part_oracle(shifted, h) == closed
            return outcome("riesz_kantorovich", ok, h)

        def axioms():
            report = verify_cond_exp_axioms(T)
            return outcome("cond_exp_axioms", report.passed, report.failures)

        def averaging():
            return outcome("averaging", T(alpha * f) == alpha * T(f), (alpha, f))

        def proj_ineq():
            return outcome("proj_ineq", check_proj_ineq(T, h) and check_proj_ineq(T, f.abs()), h)

        def component_norm():
            return outcome("inf_norm_of_component",
                           norm_Tinf(T, p.vector) == unit_projection(T(p.vector)), p)

        def band_invariance():
            # 0 ≤ u ≤ α·g ⇒ P_α(e)·u = u
            g_pos = factory.vector(space, positive=True)
            u = h.inf(alpha * g_pos)
            ok = unit_projection(alpha) * u == u and band_projection(alpha, u) == u
            return outcome("band_invariance", ok, (alpha, g_pos, u))

        def range_compatibility():
            beta = factory.range_vector(T) * factory.range_vector(T, positive=True)
            ok = band_projection(beta, alpha) == band_projection_in_range(T, beta, alpha)
            return outcome("range_band_compatibility", ok, (beta, alpha))

        def holder():
            for exponent in (1, 2, INF):
                certificate = holder_product(T, f, g, exponent).certificate
                if not certificate.holds:
                    return outcome("holder", False, (exponent, f, g))
            return outcome("holder", True)

        def triangle():
            ok = all(triangle_certificate(T, f, g, exponent) for exponent in (1, 2, INF))
            return outcome("norm_triangle", ok, (f, g))

        def monotonicity():
            bigger = f.abs() + h
            ok = all(norm_Tp_pow(T, f, k) <= norm_Tp_pow(T, bigger, k) for k in (1, 2, 3))
            ok = ok and norm_Tinf(T, f) <= norm_Tinf(T, bigger)
            return outcome("norm_monotone", ok, (f, bigger))

        def order_continuity():
            for k in range(1, 8):
                shrunk = h / 2 ** k
                for exponent in (1, INF):
                    if norm_T(T, shrunk, exponent) != norm_T(T, h, exponent) / 2 ** k:
                        return outcome("norm_order_continuous", False, (h, k))
            return outcome("norm_order_continuous", True)

        def null_ideal():
            weights = list(space.weights)
            weights[0] = Fraction(0)
            if len(weights) < 2:
                return outcome("null_ideal_reduction", True)
            degenerate = FiniteSpace(tuple(weights), allow_null=True)
            blocks = [list(block.points) for block in T.blocks]
            reduction = null_ideal_reduction(DegenerateCondExp(degenerate, Partition.of(degenerate, blocks)))
            ok = (reduction.null_ideal.points == (1,)
                  and reduction.carrier.points == tuple(range(2, space.size + 1))
                  and verify_cond_exp_axioms(reduction.reduced).passed)
            return outcome("null_ideal_reduction", ok, reduction.null_ideal)

        for name, check in (
            ("lattice_identities", identities), ("band_projection", projections),
            ("partial_inverse", inverses), ("power_root_roundtrip", powers),
            ("component_algebra", components), ("freudenthal", freudenthal),
            ("riesz_kantorovich", riesz_kantorovich), ("cond_exp_axioms", axioms),
            ("averaging", averaging), ("proj_ineq", proj_ineq),
            ("inf_norm_of_component", component_norm), ("band_invariance", band_invariance),
            ("range_band_compatibility", range_compatibility), ("holder", holder),
            ("norm_triangle", triangle), ("norm_monotone", monotonicity),
            ("norm_order_continuous", order_continuity), ("null_ideal_reduction", null_ideal),
        ):
            yield guarded(name, check)
