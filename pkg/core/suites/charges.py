"""
Инварианты зарядов: решётка, вариация, смена единицы, разложение Лебега
"""
from fractions import Fraction
from typing import Iterator, Sequence

from core.charges import (
    Charge, RawChargeTable, change_of_unit, charge_from_measure, charge_lattice,
    charge_lattice_oracle, charge_norm, directed_supremum, is_T_abs_continuous,
    is_T_abs_continuous_by_components, lebesgue_certificate, lebesgue_decomposition,
    unit_component, validate_raw_charge, variation_norm,
)
from core.cond_exp import CondExp
from core.errors import NotAdditive, NotDominated
from core.instances import InstanceFactory
from core.reports import CheckStatus
from core.spec_file import SpaceSpec
from core.suites.base import Outcome, Suite, guarded, outcome


def _lebesgue_outcome(check: str, mu: Charge, witnesses: Sequence[Charge] = ()) -> Outcome:
    parts = lebesgue_decomposition(mu)
    certificate = lebesgue_certificate(mu, parts, witnesses)
    ok = (certificate.passed
          and lebesgue_decomposition(parts.singular).absolutely_continuous.is_zero())
    witness = certificate.singular_witness.rows() if certificate.singular_witness else mu.rows()
    return outcome(check, ok, witness)


def _criteria_outcome(check: str, mu: Charge) -> Outcome:
    atomwise, direct = is_T_abs_continuous(mu), is_T_abs_continuous_by_components(mu)
    return outcome(check, atomwise.holds == direct.holds, mu.rows())


class ChargesSuite(Suite):
    """ba(C_e, R(T)): решётка, нормы, таблицы, единицы, ≪ T"""

    name = "charges"

    def check_instance(self, T: CondExp, factory: InstanceFactory) -> Iterator[Outcome]:
        space = T.space
        mu, nu = factory.charge(T), factory.charge(T)
        ac = factory.charge(T, absolutely_continuous=True)
        g = factory.range_vector(T)

        def lattice():
            closed = charge_lattice(mu, nu)
            for p in space.components():
                expected = charge_lattice_oracle(mu, nu, p)
                actual = (closed.sup(p), closed.inf(p), closed.abs(p), closed.pos(p), closed.neg(p))
                if tuple(expected) != actual:
                    return outcome("lattice_oracle", False, p)
            return outcome("lattice_oracle", True)

        def variation():
            return outcome("variation_norm", variation_norm(mu) == charge_norm(mu), mu.rows())

        def norm():
            ok = (charge_norm(mu.scale(g)) == g.abs() * charge_norm(mu)
                  and charge_norm(mu + nu) <= charge_norm(mu) + charge_norm(nu)
                  and charge_norm(mu).is_zero() == mu.is_zero())
            return outcome("charge_norm", ok, (mu.rows(), g))

        def measures():
            measure = charge_from_measure(T)
            ok = (charge_norm(measure) == space.unit
                  and all(measure(p) == T(p.vector) for p in space.components()))
            return outcome("measure_charge", ok, T)

        def raw_table():
            table = RawChargeTable.from_charge(mu)
            ok = validate_raw_charge(table) == mu
            if space.size >= 2:
                pair = space.component([1, 2])
                try:
                    validate_raw_charge(table.with_value(pair, table.table[pair] + space.unit))
                    ok = False
                except NotAdditive:
                    pass
            return outcome("raw_charge_table", ok, mu.rows())

        def directed():
            # c_k = (1 - 2⁻ᵏ)·|μ| возрастает к |μ|
            modulus = mu.lattice.abs
            steps = 6
            chain = [modulus.scale(1 - Fraction(1, 2 ** k)) for k in range(1, steps + 1)]
            top = directed_supremum(chain)
            ok = (all(c <= top for c in chain) and top <= modulus
                  and charge_norm(modulus - top) == charge_norm(mu) / 2 ** steps)
            if not modulus.is_zero():
                try:
                    directed_supremum(chain[::-1])
                    ok = False
                except NotDominated:
                    pass
            return outcome("directed_supremum", ok, mu.rows())

        def units():
            e2 = T.range_vector([factory.rational(positive=True) for _ in T.blocks])
            moved = change_of_unit(mu, e2)
            ok = (change_of_unit(moved, space.unit) == mu and charge_norm(moved) == charge_norm(mu)
                  and all(moved.at_unit_component(unit_component(e2, p)) == mu(p)
                          for p in space.components()))
            return outcome("change_of_unit", ok, e2)

        def criteria():
            return _criteria_outcome("abs_continuity_criteria", mu)

        def ideal():
            # |g'| ≤ 1 ⇒ |g'·μ| ≤ |μ|
            shrink = T.range_vector([
                Fraction(int(factory.rng.integers(-4, 5)), 4) for _ in T.blocks
            ])
            smaller = ac.scale(shrink)
            ok = (bool(is_T_abs_continuous(ac)) and bool(is_T_abs_continuous(smaller))
                  and charge_lattice(smaller, smaller).abs <= charge_lattice(ac, ac).abs
                  and bool(is_T_abs_continuous(charge_lattice(ac, ac).pos)))
            return outcome("abs_continuity_ideal", ok, ac.rows())

        def lebesgue():
            first = _lebesgue_outcome("lebesgue_decomposition", mu, [ac])
            if first.status != CheckStatus.PASS:
                return first
            return _lebesgue_outcome("lebesgue_decomposition", mu.lattice.abs, [ac])

        for name, check in (
            ("lattice_oracle", lattice), ("variation_norm", variation), ("charge_norm", norm),
            ("measure_charge", measures), ("raw_charge_table", raw_table),
            ("directed_supremum", directed), ("change_of_unit", units),
            ("abs_continuity_criteria", criteria), ("abs_continuity_ideal", ideal),
            ("lebesgue_decomposition", lebesgue),
        ):
            yield guarded(name, check)

    def check_spec(self, spec: SpaceSpec, factory: InstanceFactory) -> Iterator[Outcome]:
        yield from super().check_spec(spec, factory)
        for name in sorted(spec.charges):
            check = f"spec_charge[{name}]"
            yield guarded(f"{check}.criteria",
                          lambda: _criteria_outcome(f"{check}.criteria", spec.charge(name)))
            yield guarded(f"{check}.lebesgue",
                          lambda: _lebesgue_outcome(f"{check}.lebesgue", spec.charge(name)))
