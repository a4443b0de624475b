"""
Инварианты двойственности: изометрии, восстановление, решётка, блочное разложение
"""
from fractions import Fraction
from typing import Iterator

from core.charges import charge_norm
from core.cond_exp import INF, CondExp, norm_Tinf, norm_Tp_pow
from core.duality import (
    RawFunctional, cauchy_schwarz_certificate, charge_to_linfty, dual_ideal_check, dual_norm,
    dual_norm_axioms, dual_norm_representations, functional_lattice, functional_lattice_oracle,
    homogeneity_witness, l1_recover, l1_representation, l2_recover, l2_representation,
    linfty_to_charge, positive_part_by_oracle, product_decomposition, require_homogeneous,
)
from core.errors import NotHomogeneous
from core.instances import InstanceFactory
from core.suites.base import Outcome, Suite, guarded, outcome


class DualitySuite(Suite):
    """L̂¹ ≅ L^∞, L̂² ≅ L², L̂^∞ ≅ ba(T) и решётка функционалов"""

    name = "duality"

    def check_instance(self, T: CondExp, factory: InstanceFactory) -> Iterator[Outcome]:
        space = T.space
        f, g = factory.vector(space), factory.vector(space)
        h = factory.vector(space, positive=True)
        alpha = factory.range_vector(T)
        mu = factory.charge(T, absolutely_continuous=True)
        # |c| ≤ 1 поточечно
        shrink = space.vector([Fraction(int(factory.rng.integers(-4, 5)), 4) for _ in space.points])

        def l1():
            phi = l1_representation(T, f)
            reps = dual_norm_representations(phi, 1)
            ok = (dual_norm(phi, 1) == norm_Tinf(T, f) and l1_recover(phi) == f
                  and reps.agree and reps.infimum == dual_norm(phi, 1))
            return outcome("l1_isometry", ok, f)

        def l2():
            phi = l2_representation(T, f)
            reps = dual_norm_representations(phi, 2)
            raw = RawFunctional.of(phi)
            ok = (dual_norm(phi, 2) == norm_Tp_pow(T, f, 2) and l2_recover(phi) == f
                  and l2_recover(raw) == f and reps.agree
                  and cauchy_schwarz_certificate(phi, g))
            return outcome("l2_isometry", ok, f)

        def linfty():
            phi = charge_to_linfty(mu)
            raw = RawFunctional.of(phi)
            reps = dual_norm_representations(phi, INF)
            ok = (dual_norm(phi, INF) == charge_norm(mu) and linfty_to_charge(phi) == mu
                  and charge_to_linfty(linfty_to_charge(raw)).same_action(raw)
                  and reps.agree and reps.infimum == charge_norm(mu))
            return outcome("linfty_isometry", ok, mu.rows())

        def homogeneity():
            ok = homogeneity_witness(l1_representation(T, f)) is None
            if len(T.blocks) >= 2:
                own = T.partition.block_index(1)
                other = next(i for i in range(len(T.blocks)) if i != own)
                images = [T.block_indicator(other)] + [space.zero] * (space.size - 1)
                broken = RawFunctional(T, tuple(images))
                ok = ok and homogeneity_witness(broken) is not None
                try:
                    require_homogeneous(broken)
                    ok = False
                except NotHomogeneous:
                    pass
            return outcome("homogeneity_detector", ok, f)

        def l1_lattice():
            if space.size > 4:
                return outcome("l1_lattice_homomorphism", True)
            phi, psi = l1_representation(T, f), l1_representation(T, g)
            closed = functional_lattice(phi, psi)
            sup, inf, modulus = functional_lattice_oracle(phi, psi, h)
            ok = (closed.sup.same_action(l1_representation(T, f.sup(g)))
                  and closed.abs.same_action(l1_representation(T, f.abs()))
                  and sup == closed.sup(h) and inf == closed.inf(h) and modulus == closed.abs(h))
            return outcome("l1_lattice_homomorphism", ok, (f, g, h))

        def lattice_oracle():
            if space.size > 4:
                return outcome("functional_lattice_oracle", True)
            phi = RawFunctional.of(charge_to_linfty(mu))
            psi = RawFunctional.of(l1_representation(T, g))
            closed = functional_lattice(phi, psi)
            for v in [atom.vector for atom in space.atoms()] + [space.unit, h]:
                if functional_lattice_oracle(phi, psi, v) != (closed.sup(v), closed.inf(v), closed.abs(v)):
                    return outcome("functional_lattice_oracle", False, v)
            return outcome("functional_lattice_oracle",
                           positive_part_by_oracle(phi).same_action(closed.pos), phi.images)

        def ideal():
            psi = l1_representation(T, f)
            phi = l1_representation(T, f * shrink)
            for exponent in (1, 2, INF):
                report = dual_ideal_check(phi, psi, exponent, [g, h])
                if not report.passed:
                    return outcome("dual_ideal", False, (exponent, report.witness))
            return outcome("dual_ideal", True)

        def axioms():
            first = RawFunctional.of(l1_representation(T, f))
            second = RawFunctional.of(charge_to_linfty(mu))
            for exponent in (1, INF):
                if not dual_norm_axioms(first, second, alpha, exponent).passed:
                    return outcome("dual_norm_axioms", False, exponent)
            kernels = dual_norm_axioms(l2_representation(T, f), l2_representation(T, g), alpha, 2)
            return outcome("dual_norm_axioms", kernels.passed, 2)

        def product():
            decomposition = product_decomposition(T)
            phi = RawFunctional.of(charge_to_linfty(mu))
            parts = decomposition.split_functional(phi)
            ok = (decomposition.assemble_functional(parts).same_action(phi)
                  and decomposition.assemble_charge(decomposition.split_charge(mu)) == mu
                  and decomposition.product_norm(parts, 1) == dual_norm(phi, 1)
                  and decomposition.product_norm(parts, INF) == dual_norm(phi, INF))
            for triple, part in zip(decomposition.triples, parts):
                block = triple.points
                expected = phi(f * block.vector).at(block.points[0])
                ok = ok and triple.scalar_action(part, triple.restrict(f)) == expected
            return outcome("product_decomposition", ok, mu.rows())

        for name, check in (
            ("l1_isometry", l1), ("l2_isometry", l2), ("linfty_isometry", linfty),
            ("homogeneity_detector", homogeneity), ("l1_lattice_homomorphism", l1_lattice),
            ("functional_lattice_oracle", lattice_oracle), ("dual_ideal", ideal),
            ("dual_norm_axioms", axioms), ("product_decomposition", product),
        ):
            yield guarded(name, check)
