"""
Операторы условного ожидания, порождённые разбиениями

(Tf)(ω) = Σ_{ω' ∈ блок(ω)} f(ω')·μ({ω'}) / μ(блок(ω)).
Образ R(T) - векторы, постоянные на блоках; он же кольцо скаляров для
R(T)-значных норм ‖·‖_{T,p}.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from core.errors import (
    IncompatibleSpaces, InvalidExponent, InvalidPartition, NonPositiveWeight, NotPositive,
)
from core.lattice import (
    ONE, ZERO, Component, FiniteSpace, Vector, as_fraction, band_projection,
    exact_root, power,
)

logger = logging.getLogger(__name__)

# Элемент R(T): вектор, постоянный на каждом блоке
RTVector = Vector

INF = math.inf
Exponent = Union[int, float]


# ---------------------------------------------------------------------------
# Разбиения и оператор T
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Разбиение Ω на непустые попарно дизъюнктные блоки"""
    space: FiniteSpace
    blocks: Tuple[Component, ...]
    owner: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = 0
        owner = [-1] * self.space.size
        for index, block in enumerate(self.blocks):
            if block.space != self.space:
                raise InvalidPartition("block lives on another space", witness=index)
            if block.is_empty():
                raise InvalidPartition(f"block #{index + 1} is empty", witness=index)
            if block.mask & seen:
                raise InvalidPartition(
                    f"block {block} overlaps an earlier block", witness=block.points
                )
            seen |= block.mask
            for i in block.indices:
                owner[i] = index
        if seen != self.space.full.mask:
            missing = self.space.full.difference(Component(self.space, seen))
            raise InvalidPartition(f"blocks do not cover points {missing}", witness=missing.points)
        object.__setattr__(self, "owner", tuple(owner))

    @classmethod
    def of(cls, space: FiniteSpace, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Разбиение из списков точек (нумерация с 1)"""
        return cls(space, tuple(Component.from_points(space, block) for block in blocks))

    @classmethod
    def singletons(cls, space: FiniteSpace) -> "Partition":
        return cls(space, tuple(space.atoms()))

    @classmethod
    def trivial(cls, space: FiniteSpace) -> "Partition":
        return cls(space, (space.full,))

    def block_index(self, point: int) -> int:
        """Номер блока (с 0), содержащего точку ω (нумерация с 1)"""
        return self.owner[point - 1]

    def block_of(self, point: int) -> Component:
        return self.blocks[self.block_index(point)]

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return " | ".join(str(block) for block in self.blocks)


@dataclass(frozen=True)
class CondExp:
    """Условное ожидание T, заданное разбиением и массами блоков"""
    partition: Partition
    block_masses: Tuple[Fraction, ...]

    def __post_init__(self):
        masses = tuple(as_fraction(m) for m in self.block_masses)
        object.__setattr__(self, "block_masses", masses)
        if len(masses) != len(self.partition):
            raise InvalidPartition("one mass per block is required")
        for index, mass in enumerate(masses):
            if mass <= 0:
                raise NonPositiveWeight(f"block #{index + 1} has mass {mass}", witness=index)

    @property
    def space(self) -> FiniteSpace:
        return self.partition.space

    @property
    def blocks(self) -> Tuple[Component, ...]:
        return self.partition.blocks

    def apply(self, f: Vector) -> RTVector:
        """Усреднение f по блокам с весами μ"""
        self.space.require_same(f.space)
        values = [ZERO] * self.space.size
        weights = self.space.weights
        for block, mass in zip(self.blocks, self.block_masses):
            average = sum((f.values[i] * weights[i] for i in block.indices), ZERO) / mass
            for i in block.indices:
                values[i] = average
        return Vector(self.space, tuple(values))

    __call__ = apply

    def block_indicator(self, index: int) -> RTVector:
        return self.blocks[index].vector

    def block_value(self, v: RTVector, index: int) -> Fraction:
        return v.values[self.blocks[index].indices[0]]

    def is_range(self, v: Vector) -> bool:
        """v ∈ R(T) ⇔ v постоянен на каждом блоке"""
        self.space.require_same(v.space)
        return all(
            len({v.values[i] for i in block.indices}) == 1 for block in self.blocks
        )

    def require_range(self, v: Vector, what: str = "value") -> RTVector:
        if not self.is_range(v):
            raise IncompatibleSpaces(f"{what} {v} is not block-constant for T", witness=v)
        return v

    def range_vector(self, block_values: Sequence) -> RTVector:
        """Элемент R(T) по значениям на блоках"""
        if len(block_values) != len(self.blocks):
            raise IncompatibleSpaces("one value per block is required")
        values = [ZERO] * self.space.size
        for block, value in zip(self.blocks, block_values):
            for i in block.indices:
                values[i] = as_fraction(value)
        return Vector(self.space, tuple(values))

    def blockwise(self, v: Vector, reducer) -> RTVector:
        """Применить reducer к значениям v на каждом блоке"""
        return self.range_vector([
            reducer([v.values[i] for i in block.indices]) for block in self.blocks
        ])

    def __str__(self) -> str:
        return f"T[{self.partition}; masses {', '.join(str(m) for m in self.block_masses)}]"


def make_cond_exp(space: FiniteSpace, partition: Partition) -> CondExp:
    """Построить T по разбиению; массы блоков - суммы весов атомов"""
    space.require_same(partition.space)
    if not space.is_strictly_positive:
        raise NonPositiveWeight(
            "strictly positive weights are required; reduce degenerate data "
            "through null_ideal_reduction"
        )
    masses = tuple(
        sum((space.weights[i] for i in block.indices), ZERO) for block in partition.blocks
    )
    return CondExp(partition, masses)


def apply_T(T: CondExp, f: Vector) -> RTVector:
    return T.apply(f)


def is_T_universally_complete(T: CondExp) -> bool:
    """
    На конечной модели E = ℚ^n совпадает со своей T-универсальной
    пополненной оболочкой: L¹(T) = E, поэтому предикат тривиально истинен
    """
    return True


# ---------------------------------------------------------------------------
# Проверка аксиом
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class AxiomReport:
    checks: Tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[AxiomCheck]:
        return [check for check in self.checks if not check.passed]

    def get(self, name: str) -> AxiomCheck:
        return next(check for check in self.checks if check.name == name)


def verify_cond_exp_axioms(T: CondExp) -> AxiomReport:
    """
    Конечные проверки аксиом условного ожидания на базисе атомов

    Returns:
        AxiomReport со списком проверок и свидетелями нарушений
    """
    space = T.space
    atoms = [atom.vector for atom in space.atoms()]
    images = [T(atom) for atom in atoms]
    checks: List[AxiomCheck] = []

    def record(name: str, witness: Optional[str]):
        checks.append(AxiomCheck(name, witness is None, witness))

    # Линейность: T(a·x + b·y) = a·Tx + b·Ty на парах атомов и e
    witness = None
    probes = atoms + [space.unit]
    for x in probes:
        for y in probes:
            if T(x * 2 - y) != T(x) * 2 - T(y):
                witness = f"x={x}, y={y}"
                break
        if witness:
            break
    record("linearity", witness)

    witness = next((f"T({a})={img}" for a, img in zip(atoms, images) if not img.is_positive()), None)
    record("positivity", witness)

    image = T(space.unit)
    record("unit", None if image == space.unit else f"T(e)={image}")

    witness = next((f"T²({a})≠T({a})" for a, img in zip(atoms, images) if T(img) != img), None)
    record("idempotence", witness)

    witness = None
    for a in images:
        for b in images:
            for combo in (a.sup(b), a.inf(b), (a - b).abs()):
                if not T.is_range(combo):
                    witness = f"{combo} from {a}, {b}"
    record("range_riesz_subspace", witness)

    # Строгая положительность: T|f| = 0 ⇒ f = 0 (атомов достаточно)
    witness = next((f"T(|{a}|)=0" for a, img in zip(atoms, images) if img.is_zero()), None)
    record("strict_positivity", witness)

    witness = None
    for index in range(len(T.blocks)):
        g = T.block_indicator(index) * 3 + space.unit
        for a, img in zip(atoms, images):
            if T(g * a) != g * img:
                witness = f"g={g}, f={a}"
    record("averaging", witness)

    report = AxiomReport(tuple(checks))
    logger.debug("axioms of %s: %s", T, "ok" if report.passed else report.failures)
    return report


# ---------------------------------------------------------------------------
# Нулевой идеал и носитель
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegenerateCondExp:
    """Данные формулы усреднения с весами ≥ 0 (допускаются нулевые)"""
    space: FiniteSpace
    partition: Partition

    def __post_init__(self):
        self.space.require_same(self.partition.space)


@dataclass(frozen=True)
class NullIdealReduction:
    """N_T, его дизъюнктное дополнение C_T и строго положительное T на C_T"""
    null_ideal: Component
    carrier: Component
    reduced: CondExp

    def restrict_to_carrier(self, f: Vector) -> Vector:
        """P_{C_T} f как вектор на подпространстве носителя"""
        return Vector(self.reduced.space, tuple(f.values[i] for i in self.carrier.indices))

    def extend_from_carrier(self, g: Vector) -> Vector:
        """Вектор на носителе, продолженный нулём на N_T"""
        values = [ZERO] * self.carrier.space.size
        for value, i in zip(g.values, self.carrier.indices):
            values[i] = value
        return Vector(self.carrier.space, tuple(values))

    def quotient_representative(self, f: Vector) -> Vector:
        """Канонический представитель класса f + N_T: P_{C_T} f"""
        return band_projection(self.carrier.vector, f)


def null_ideal_reduction(T0: DegenerateCondExp) -> NullIdealReduction:
    """
    Редукция к носителю: точки нулевого веса образуют N_T

    Returns:
        NullIdealReduction(N_T, C_T, строго положительное T на C_T)
    """
    space = T0.space
    null_mask = 0
    for i, weight in enumerate(space.weights):
        if weight == 0:
            null_mask |= 1 << i
    null_ideal = Component(space, null_mask)
    carrier = null_ideal.complement()
    if carrier.is_empty():
        raise NonPositiveWeight("all weights are zero: the carrier is empty")

    # Перенумерация точек носителя 1..m
    renumber = {point: new for new, point in enumerate(carrier.points, start=1)}
    reduced_space = FiniteSpace(tuple(space.weights[i] for i in carrier.indices))
    blocks = []
    for block in T0.partition.blocks:
        kept = [renumber[p] for p in block.meet(carrier).points]
        if kept:
            blocks.append(kept)
    reduced = make_cond_exp(reduced_space, Partition.of(reduced_space, blocks))
    logger.info("null ideal %s, carrier %s, %d blocks kept", null_ideal, carrier, len(blocks))
    return NullIdealReduction(null_ideal, carrier, reduced)


# ---------------------------------------------------------------------------
# R(T)-значные нормы
# ---------------------------------------------------------------------------

def _require_integer_exponent(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise InvalidExponent(f"integer exponent p ≥ 1 expected, got {p}")
    return p


def norm_Tp_pow(T: CondExp, f: Vector, p: int) -> RTVector:
    """T(|f|^p) без извлечения корня (всегда точно)"""
    p = _require_integer_exponent(p)
    return T(power(f.abs(), p))


def norm_Tp(T: CondExp, f: Vector, p: int) -> RTVector:
    """‖f‖_{T,p} = T(|f|^p)^{1/p}; NonRationalRoot, если корень иррационален"""
    p = _require_integer_exponent(p)
    pow_value = norm_Tp_pow(T, f, p)
    return T.blockwise(pow_value, lambda vals: exact_root(vals[0], p))


def norm_Tinf(T: CondExp, f: Vector) -> RTVector:
    """‖f‖_{T,∞}: наименьший α ∈ R(T)_+ с |f| ≤ α, т.е. максимум |f| по блоку"""
    return T.blockwise(f.abs(), max)


def norm_T(T: CondExp, f: Vector, p: Exponent) -> RTVector:
    return norm_Tinf(T, f) if p == INF else norm_Tp(T, f, p)


def conjugate_exponent(p: Exponent) -> Union[Fraction, float]:
    """q с 1/p + 1/q = 1"""
    if p == INF:
        return ONE
    p = _require_integer_exponent(p)
    return INF if p == 1 else Fraction(p, p - 1)


def check_proj_ineq(T: CondExp, f: Vector) -> bool:
    """P_f ≤ P_{Tf}: носитель f лежит в носителе Tf"""
    if not f.is_positive():
        raise NotPositive(f"P_f ≤ P_Tf is stated for f ≥ 0, got {f}")
    return f.support <= T(f).support


def band_projection_in_range(T: CondExp, alpha: RTVector, g: RTVector) -> RTVector:
    """P_α(g), вычисленная внутри R(T): поблочные маски"""
    T.require_range(alpha, "alpha")
    T.require_range(g, "g")
    return T.range_vector([
        T.block_value(g, index) if T.block_value(alpha, index) != 0 else ZERO
        for index in range(len(T.blocks))
    ])


# ---------------------------------------------------------------------------
# Гёльдер и неравенство треугольника без корней
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HolderCertificate:
    """
    Проверенное неравенство ‖fg‖_{T,1} ≤ ‖f‖_{T,p}·‖g‖_{T,q}

    Для конечных p, q сравнивается lhs^p ≤ T|f|^p · (T|g|^q)^{p-1}
    (эквивалентно (T|fg|)^{pq} ≤ (T|f|^p)^q·(T|g|^q)^p).
    """
    p: Exponent
    q: Union[Fraction, float]
    exponent: int
    lhs_power: RTVector
    rhs_power: RTVector

    @property
    def holds(self) -> bool:
        return self.lhs_power <= self.rhs_power

    @property
    def equality(self) -> bool:
        return self.lhs_power == self.rhs_power


class HolderResult(NamedTuple):
    product: Vector
    lhs: RTVector
    certificate: HolderCertificate


def holder_product(T: CondExp, f: Vector, g: Vector, p: Exponent) -> HolderResult:
    """
    Произведение fg и точный сертификат неравенства Гёльдера

    Args:
        p: Целое p ≥ 1 или INF; сопряжённый q вычисляется сам

    Returns:
        HolderResult(fg, ‖fg‖_{T,1}, сертификат)

    Raises:
        NonRationalRoot: при целом p ≥ 3 степень |g|^q с q = p/(p-1) требует корня
            степени p-1, который для точной арифметики может быть иррационален
            (p = 1, 2, ∞ этой ошибки не дают)
    """
    q = conjugate_exponent(p)
    product = f * g
    lhs = T(product.abs())
    if p == 1:
        certificate = HolderCertificate(p, q, 1, lhs, norm_Tp_pow(T, f, 1) * norm_Tinf(T, g))
    elif p == INF:
        certificate = HolderCertificate(p, q, 1, lhs, norm_Tinf(T, f) * norm_Tp_pow(T, g, 1))
    else:
        a = norm_Tp_pow(T, f, p)
        b = T(power(g.abs(), q))  # q = p/(p-1): корень может оказаться иррациональным
        rhs = a
        for _ in range(p - 1):
            rhs = rhs * b
        lhs_power = power(lhs, p)
        certificate = HolderCertificate(p, q, p, lhs_power, rhs)
    return HolderResult(product, lhs, certificate)


def triangle_certificate(T: CondExp, f: Vector, g: Vector, p: Exponent) -> bool:
    """
    ‖f+g‖_{T,p} ≤ ‖f‖_{T,p} + ‖g‖_{T,p} в точной форме

    p = 1 и ∞ - напрямую; p = 2 - через T|f+g|² ≤ Tf² + Tg² + 2T|fg|
    и (T|fg|)² ≤ Tf²·Tg².
    """
    if p == INF:
        return norm_Tinf(T, f + g) <= norm_Tinf(T, f) + norm_Tinf(T, g)
    if p == 1:
        return norm_Tp(T, f + g, 1) <= norm_Tp(T, f, 1) + norm_Tp(T, g, 1)
    if p == 2:
        ff, gg = norm_Tp_pow(T, f, 2), norm_Tp_pow(T, g, 2)
        cross = T((f * g).abs())
        expansion = norm_Tp_pow(T, f + g, 2) <= ff + gg + cross * 2
        return expansion and cross * cross <= ff * gg
    raise InvalidExponent(f"triangle certificate supports p ∈ {{1, 2, ∞}}, got {p}")
