"""
Заряды ba(C_e, R(T)): R(T)-значные конечно-аддитивные функции на компонентах

Заряд хранится значениями на атомах 1_ω; значение на компоненте - сумма
значений её атомов, поэтому аддитивность выполняется по построению.
Полная таблица на 2^n компонентах нужна только как вход для проверки аксиом.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from core.cond_exp import CondExp, RTVector
from core.config import settings
from core.errors import (
    IncompatibleSpaces, InvalidUnit, MissingComponent, NotAbsolutelyContinuous, NotAdditive,
    NotDominated,
)
from core.lattice import Component, Vector, band_projection, supremum
from core.oracles import component_partitions, require_enumerable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Charge:
    """
    Заряд μ ∈ ba(C_u, R(T)) для слабой порядковой единицы u (по умолчанию e)

    atom_values[ω-1] = μ(1_ω), каждое значение постоянно на блоках T.
    Компоненты u - это векторы P_p(u); они взаимно однозначны компонентам e
    через носитель, так что одни и те же атомные данные описывают заряд
    при любой единице.
    """
    cond_exp: CondExp
    atom_values: Tuple[Vector, ...]
    unit: Optional[Vector] = field(default=None)

    def __post_init__(self):
        space = self.cond_exp.space
        values = tuple(self.atom_values)
        object.__setattr__(self, "atom_values", values)
        if len(values) != space.size:
            raise IncompatibleSpaces(f"charge needs {space.size} atom values, got {len(values)}")
        for point, value in enumerate(values, start=1):
            self.cond_exp.require_range(value, f"atom value at {point}")
        if self.unit is None:
            object.__setattr__(self, "unit", space.unit)
        else:
            space.require_same(self.unit.space)

    @classmethod
    def zero(cls, T: CondExp) -> "Charge":
        return cls(T, tuple(T.space.zero for _ in T.space.points))

    @classmethod
    def from_rows(cls, T: CondExp, rows: Iterable[Iterable]) -> "Charge":
        """Атомные значения построчно: rows[ω-1] = μ(1_ω)"""
        return cls(T, tuple(T.space.vector(list(row)) for row in rows))

    @property
    def space(self):
        return self.cond_exp.space

    def atom(self, point: int) -> RTVector:
        return self.atom_values[point - 1]

    def __call__(self, p: Component) -> RTVector:
        return eval_charge(self, p)

    @property
    def total(self) -> RTVector:
        """μ(e)"""
        return eval_charge(self, self.space.full)

    def at_unit_component(self, q: Vector) -> RTVector:
        """Значение на компоненте q единицы self.unit (q = P_q(unit))"""
        return eval_charge(self, unit_component_support(q, self.unit))

    @cached_property
    def lattice(self) -> "ChargeLattice":
        """μ ∨ μ, μ ∧ μ, |μ|, μ⁺, μ⁻; считается один раз на заряд"""
        return charge_lattice(self, self)

    @cached_property
    def abs_continuity(self) -> "AbsoluteContinuity":
        return is_T_abs_continuous(self)

    # --- R(T)-модуль ---

    def _same(self, other: "Charge") -> None:
        if self.cond_exp != other.cond_exp:
            raise IncompatibleSpaces("charges belong to different operators T")
        if self.unit != other.unit:
            raise IncompatibleSpaces("charges live on components of different units")

    def _atomwise(self, values: Iterable[Vector]) -> "Charge":
        return Charge(self.cond_exp, tuple(values), self.unit)

    def __add__(self, other: "Charge") -> "Charge":
        self._same(other)
        return self._atomwise(a + b for a, b in zip(self.atom_values, other.atom_values))

    def __sub__(self, other: "Charge") -> "Charge":
        self._same(other)
        return self._atomwise(a - b for a, b in zip(self.atom_values, other.atom_values))

    def __neg__(self) -> "Charge":
        return self._atomwise(-a for a in self.atom_values)

    def scale(self, g: Union[RTVector, int, Fraction]) -> "Charge":
        """g·μ для g ∈ R(T) или скаляра"""
        if isinstance(g, Vector):
            self.cond_exp.require_range(g, "module scalar")
        return self._atomwise(a * g for a in self.atom_values)

    def __le__(self, other: "Charge") -> bool:
        """μ ≤ ν ⇔ μ(p) ≤ ν(p) для всех p; по аддитивности достаточно атомов"""
        self._same(other)
        return all(a <= b for a, b in zip(self.atom_values, other.atom_values))

    def __ge__(self, other: "Charge") -> bool:
        return other <= self

    def is_positive(self) -> bool:
        return all(a.is_positive() for a in self.atom_values)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.atom_values)

    def rows(self) -> List[List[str]]:
        return [[str(v) for v in a.values] for a in self.atom_values]


def eval_charge(mu: Charge, p: Component) -> RTVector:
    """μ(p) = Σ_{ω ∈ p} μ(1_ω)"""
    mu.space.require_same(p.space)
    return sum((mu.atom_values[i] for i in p.indices), mu.space.zero)


def charge_from_measure(T: CondExp) -> Charge:
    """Заряд p ↦ T(p)"""
    return Charge(T, tuple(T(atom.vector) for atom in T.space.atoms()))


def weight_charge(T: CondExp) -> Charge:
    """Заряд p ↦ μ(p)·e, порождённый весами"""
    return Charge(T, tuple(T.space.unit * w for w in T.space.weights))


# ---------------------------------------------------------------------------
# Сырые таблицы
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RawChargeTable:
    """Значения на (ожидаемо) всех 2^n компонентах; проверяется отдельно"""
    cond_exp: CondExp
    table: Dict[Component, Vector]

    @classmethod
    def from_charge(cls, mu: Charge) -> "RawChargeTable":
        require_enumerable(mu.space.size, settings.ENUMERATION_MAX_OMEGA, "charge table")
        return cls(mu.cond_exp, {p: eval_charge(mu, p) for p in mu.space.components()})

    def with_value(self, p: Component, value: Vector) -> "RawChargeTable":
        table = dict(self.table)
        table[p] = value
        return RawChargeTable(self.cond_exp, table)

    def without(self, p: Component) -> "RawChargeTable":
        return RawChargeTable(self.cond_exp, {q: v for q, v in self.table.items() if q != p})


def validate_raw_charge(t: RawChargeTable) -> Charge:
    """
    Проверить μ(0) = 0 и аддитивность на всех парах дизъюнктных компонент

    Ограниченность по порядку на конечной модели автоматическая.

    Returns:
        Заряд в каноническом атомном виде

    Raises:
        MissingComponent: в таблице нет какой-то компоненты
        NotAdditive: witness = (p, q), p ∧ q = 0 и μ(p+q) ≠ μ(p) + μ(q)
    """
    T = t.cond_exp
    space = T.space
    require_enumerable(space.size, settings.ENUMERATION_MAX_OMEGA, "charge validation")
    for p in space.components():
        if p not in t.table:
            raise MissingComponent(f"no value for component {p}", witness=p)
        T.require_range(t.table[p], f"value on {p}")

    empty = space.empty
    if not t.table[empty].is_zero():
        raise NotAdditive(f"μ(0) = {t.table[empty]} ≠ 0", witness=(empty, empty))

    for p in space.components():
        if p.is_empty():
            continue
        for q in p.complement().sub_components():
            if q.is_empty() or q.mask < p.mask:
                continue
            if t.table[p.join(q)] != t.table[p] + t.table[q]:
                raise NotAdditive(
                    f"μ({p.join(q)}) ≠ μ({p}) + μ({q})", witness=(p, q)
                )
    return Charge(T, tuple(t.table[atom] for atom in space.atoms()))


# ---------------------------------------------------------------------------
# Решётка зарядов и нормы
# ---------------------------------------------------------------------------

class ChargeLattice(NamedTuple):
    sup: Charge
    inf: Charge
    abs: Charge
    pos: Charge
    neg: Charge


class LatticeValues(NamedTuple):
    sup: RTVector
    inf: RTVector
    abs: RTVector
    pos: RTVector
    neg: RTVector


def charge_lattice(mu: Charge, nu: Charge) -> ChargeLattice:
    """
    Замкнутые формулы: на атоме 1_ω супремум берётся по q ∈ {0, 1_ω},
    т.е. (μ ∨ ν)(1_ω) = μ(1_ω) ∨ ν(1_ω) в R(T)
    """
    mu._same(nu)
    pairs = list(zip(mu.atom_values, nu.atom_values))
    return ChargeLattice(
        sup=mu._atomwise(a.sup(b) for a, b in pairs),
        inf=mu._atomwise(a.inf(b) for a, b in pairs),
        abs=mu._atomwise(a.abs() for a in mu.atom_values),
        pos=mu._atomwise(a.pos() for a in mu.atom_values),
        neg=mu._atomwise(a.neg() for a in mu.atom_values),
    )


def charge_lattice_oracle(mu: Charge, nu: Charge, p: Component) -> LatticeValues:
    """Перебор по всем q ≤ p: (μ∨ν)(p) = sup{μ(q) + ν(p - q)} и т.д."""
    mu._same(nu)
    subs = list(p.sub_components())
    return LatticeValues(
        sup=supremum(mu(q) + nu(p.difference(q)) for q in subs),
        inf=-supremum(-(mu(q) + nu(p.difference(q))) for q in subs),
        abs=supremum(mu(q) - mu(p.difference(q)) for q in subs),
        pos=supremum(mu(q) for q in subs),
        neg=supremum(-mu(q) for q in subs),
    )


def charge_norm(mu: Charge) -> RTVector:
    """‖μ‖ = |μ|(e)"""
    return mu.lattice.abs.total


def variation_sums(mu: Charge) -> Iterable[Tuple[List[Component], RTVector]]:
    for partition in component_partitions(mu.space.full):
        yield partition, sum((mu(p).abs() for p in partition), mu.space.zero)


def variation_norm(mu: Charge) -> RTVector:
    """sup по конечным разбиениям Z единицы e от Σ_{p ∈ Z} |μ(p)|"""
    return supremum(total for _, total in variation_sums(mu))


def variation_attainers(mu: Charge) -> List[List[Component]]:
    """Разбиения, на которых достигается супремум вариации"""
    sums = list(variation_sums(mu))
    best = supremum(total for _, total in sums)
    return [partition for partition, total in sums if total == best]


def directed_supremum(charges: Sequence[Charge]) -> Charge:
    """Супремум возрастающей последовательности; вычисляется поточечно"""
    if not charges:
        raise ValueError("directed supremum of an empty sequence")
    for previous, current in zip(charges, charges[1:]):
        if not previous <= current:
            raise NotDominated("sequence of charges is not increasing")
    first = charges[0]
    return first._atomwise(
        supremum(mu.atom_values[i] for mu in charges) for i in range(first.space.size)
    )


# ---------------------------------------------------------------------------
# Смена слабой порядковой единицы
# ---------------------------------------------------------------------------

def validate_unit(T: CondExp, e2: Vector) -> Vector:
    """e2 > 0 поточечно (слабая единица) и T(e2) = e2"""
    T.space.require_same(e2.space)
    zero_points = [point for point in T.space.points if e2.at(point) <= 0]
    if zero_points:
        raise InvalidUnit(f"{e2} is not a weak order unit: not positive at {zero_points}",
                          witness=zero_points[0])
    if T(e2) != e2:
        raise InvalidUnit(f"T({e2}) = {T(e2)} ≠ {e2}", witness=e2)
    return e2


def unit_component(unit: Vector, p: Component) -> Vector:
    """θ: компонента p единицы e ↦ P_p(unit)"""
    return band_projection(p.vector, unit)


def unit_component_support(q: Vector, unit: Vector) -> Component:
    """θ⁻¹: компонента q единицы unit ↦ её носитель"""
    support = q.support
    if unit_component(unit, support) != q:
        raise InvalidUnit(f"{q} is not a component of {unit}", witness=q)
    return support


def change_of_unit(mu: Charge, e2: Vector) -> Charge:
    """
    Φ: ba(C_u, R(T)) → ba(C_{e2}, R(T)), Φ(μ)(q) = μ(P_q(u))

    Компоненты обеих единиц отвечают одним и тем же носителям, поэтому
    атомные данные сохраняются, меняется только единица.
    """
    validate_unit(mu.cond_exp, e2)
    logger.debug("change of unit %s -> %s", mu.unit, e2)
    return Charge(mu.cond_exp, mu.atom_values, e2)


# ---------------------------------------------------------------------------
# T-абсолютная непрерывность и разложение Лебега
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbsoluteContinuity:
    holds: bool
    witness: Optional[Component] = None

    def __bool__(self) -> bool:
        return self.holds


def is_T_abs_continuous(mu: Charge) -> AbsoluteContinuity:
    """
    μ ≪ T: на конечной модели - каждое μ(1_ω) сосредоточено на блоке ω
    (носитель T(1_ω) - это ровно блок ω)
    """
    T = mu.cond_exp
    for point in mu.space.points:
        if not mu.atom(point).support <= T.partition.block_of(point):
            return AbsoluteContinuity(False, mu.space.atom(point))
    return AbsoluteContinuity(True)


def is_T_abs_continuous_by_components(mu: Charge) -> AbsoluteContinuity:
    """Определение напрямую: μ(p) ∈ B_{Tp} для всех 2^n компонент p"""
    T = mu.cond_exp
    require_enumerable(mu.space.size, settings.ENUMERATION_MAX_OMEGA, "absolute continuity")
    for p in mu.space.components():
        if not mu(p).support <= T(p.vector).support:
            return AbsoluteContinuity(False, p)
    return AbsoluteContinuity(True)


class LebesgueParts(NamedTuple):
    absolutely_continuous: Charge
    singular: Charge


def lebesgue_decomposition(mu: Charge) -> LebesgueParts:
    """μ = μ_ac + μ_s: μ_ac - значения атомов, обрезанные до их блоков"""
    T = mu.cond_exp
    ac = mu._atomwise(
        band_projection(T.partition.block_of(point).vector, mu.atom(point))
        for point in mu.space.points
    )
    return LebesgueParts(ac, mu - ac)


@dataclass(frozen=True)
class LebesgueCertificate:
    """Проверка пары (μ_ac, μ_s), не опирающаяся на формулу разложения"""
    sums_to_charge: bool
    ac_continuous: bool
    singular_witness: Optional[Charge] = None

    @property
    def passed(self) -> bool:
        return self.sums_to_charge and self.ac_continuous and self.singular_witness is None


def lebesgue_certificate(mu: Charge, parts: LebesgueParts,
                         witnesses: Sequence[Charge] = ()) -> LebesgueCertificate:
    """
    μ_ac + μ_s = μ, μ_ac ≪ T по определению на всех 2^n компонентах и
    |μ_s| ∧ |ν| = 0 для заряда p ↦ T(p) и каждого ν ≪ T из witnesses

    Носитель T(1_ω) - весь блок ω, поэтому дизъюнктность с p ↦ T(p)
    равносильна μ_s ⊥ ba(T).

    Raises:
        NotAbsolutelyContinuous: заряд из witnesses не ≪ T
    """
    ac, singular = parts
    T = mu.cond_exp
    singular_witness = None
    for nu in [charge_from_measure(T)] + list(witnesses):
        verdict = nu.abs_continuity
        if not verdict:
            raise NotAbsolutelyContinuous(
                f"disjointness witness is not T-absolutely continuous at {verdict.witness}",
                witness=verdict.witness,
            )
        # (|μ_s| ∧ |ν|)(1_ω) = |μ_s(1_ω)| ∧ |ν(1_ω)|
        if not all(a.abs().inf(b.abs()).is_zero()
                   for a, b in zip(singular.atom_values, nu.atom_values)):
            singular_witness = nu
            break
    return LebesgueCertificate(
        sums_to_charge=ac + singular == mu,
        ac_continuous=is_T_abs_continuous_by_components(ac).holds,
        singular_witness=singular_witness,
    )
