"""
Ядро векторной решётки над конечным множеством Ω = {1..n}

Все скаляры - точные рациональные числа (fractions.Fraction), все значения
неизменяемы. Точки Ω нумеруются с 1, компоненты хранятся битовыми масками
(бит ω-1 отвечает точке ω).
"""
import logging
import math
import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from core.errors import (
    IncompatibleSpaces, InvalidExponent, NegativeBase, NonPositiveWeight,
    NonRationalRoot, NotDominated, NotPositive,
)

logger = logging.getLogger(__name__)

ScalarLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)
RATIONAL_TEXT = re.compile(r"^-?\d+(/\d+)?$")


def as_fraction(value: ScalarLike) -> Fraction:
    """Привести int / "a" / "a/b" / Fraction к Fraction; float и "1.5" запрещены"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, str) and RATIONAL_TEXT.match(value.strip()):
        return Fraction(value.strip())
    raise TypeError(f"{value!r} is not an exact rational: use an int, a Fraction or 'a/b'")


# ---------------------------------------------------------------------------
# Пространство и векторы
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteSpace:
    """Конечное Ω с весами μ({ω}); веса строго положительны, если не allow_null"""
    weights: Tuple[Fraction, ...]
    allow_null: bool = False

    def __post_init__(self):
        weights = tuple(as_fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise NonPositiveWeight("a finite space needs at least one point")
        for point, weight in enumerate(weights, start=1):
            if weight < 0 or (weight == 0 and not self.allow_null):
                raise NonPositiveWeight(
                    f"weight of point {point} must be positive, got {weight}",
                    witness=point,
                )

    @classmethod
    def of(cls, *weights: ScalarLike) -> "FiniteSpace":
        return cls(tuple(as_fraction(w) for w in weights))

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def points(self) -> range:
        return range(1, self.size + 1)

    @property
    def is_strictly_positive(self) -> bool:
        return all(w > 0 for w in self.weights)

    @property
    def unit(self) -> "Vector":
        """Слабая порядковая единица e = (1, ..., 1)"""
        return Vector(self, (ONE,) * self.size)

    @property
    def zero(self) -> "Vector":
        return Vector(self, (ZERO,) * self.size)

    @property
    def full(self) -> "Component":
        return Component(self, (1 << self.size) - 1)

    @property
    def empty(self) -> "Component":
        return Component(self, 0)

    def vector(self, *values: ScalarLike) -> "Vector":
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = tuple(values[0])
        return Vector(self, tuple(as_fraction(v) for v in values))

    def atom(self, point: int) -> "Component":
        return Component.from_points(self, [point])

    def atoms(self) -> List["Component"]:
        return [self.atom(point) for point in self.points]

    def component(self, *points: int) -> "Component":
        if len(points) == 1 and isinstance(points[0], (list, tuple, set, frozenset)):
            points = tuple(points[0])
        return Component.from_points(self, points)

    def components(self) -> Iterator["Component"]:
        """Все 2^n компонент e в порядке возрастания маски"""
        for mask in range(1 << self.size):
            yield Component(self, mask)

    def require_same(self, other: "FiniteSpace") -> None:
        if self != other:
            raise IncompatibleSpaces(
                f"operands live on different spaces (n={self.size} vs n={other.size})"
            )

    def __str__(self) -> str:
        return "Ω(" + ", ".join(str(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class Vector:
    """Элемент E: рациональная функция на Ω"""
    space: FiniteSpace
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.space.size:
            raise IncompatibleSpaces(
                f"vector has {len(values)} entries, space has {self.space.size} points"
            )

    # --- доступ ---

    def at(self, point: int) -> Fraction:
        """Значение в точке ω (нумерация с 1)"""
        return self.values[point - 1]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    # --- линейная структура ---

    def _other(self, other: "Vector") -> Tuple[Fraction, ...]:
        self.space.require_same(other.space)
        return other.values

    def __add__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        return Vector(self.space, tuple(a + b for a, b in zip(self.values, self._other(other))))

    def __sub__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        return Vector(self.space, tuple(a - b for a, b in zip(self.values, self._other(other))))

    def __neg__(self) -> "Vector":
        return Vector(self.space, tuple(-a for a in self.values))

    def __mul__(self, other: Union["Vector", ScalarLike]) -> "Vector":
        """Поточечное произведение (f-алгебра) или умножение на скаляр"""
        if isinstance(other, Vector):
            return Vector(self.space, tuple(a * b for a, b in zip(self.values, self._other(other))))
        if isinstance(other, (int, Fraction)):
            return Vector(self.space, tuple(a * other for a in self.values))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar: ScalarLike) -> "Vector":
        scalar = as_fraction(scalar)
        return Vector(self.space, tuple(a / scalar for a in self.values))

    # --- порядок ---

    def __le__(self, other: "Vector") -> bool:
        return all(a <= b for a, b in zip(self.values, self._other(other)))

    def __ge__(self, other: "Vector") -> bool:
        return all(a >= b for a, b in zip(self.values, self._other(other)))

    def sup(self, other: "Vector") -> "Vector":
        return Vector(self.space, tuple(max(a, b) for a, b in zip(self.values, self._other(other))))

    def inf(self, other: "Vector") -> "Vector":
        return Vector(self.space, tuple(min(a, b) for a, b in zip(self.values, self._other(other))))

    def abs(self) -> "Vector":
        return Vector(self.space, tuple(abs(a) for a in self.values))

    def pos(self) -> "Vector":
        return Vector(self.space, tuple(max(a, ZERO) for a in self.values))

    def neg(self) -> "Vector":
        return Vector(self.space, tuple(max(-a, ZERO) for a in self.values))

    def is_positive(self) -> bool:
        return all(a >= 0 for a in self.values)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.values)

    @property
    def support(self) -> "Component":
        mask = 0
        for index, value in enumerate(self.values):
            if value != 0:
                mask |= 1 << index
        return Component(self.space, mask)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class FloatVector:
    """Вещественный вариант вектора (только для float-режима степеней)"""
    space: FiniteSpace
    values: Tuple[float, ...]
    tolerance: float = 1e-12

    def close_to(self, other: "FloatVector") -> bool:
        return all(
            abs(a - b) <= self.tolerance * max(1.0, abs(a), abs(b))
            for a, b in zip(self.values, other.values)
        )


def supremum(vectors: Iterable[Vector]) -> Vector:
    """Поточечный супремум конечного непустого семейства"""
    result: Optional[Vector] = None
    for vector in vectors:
        result = vector if result is None else result.sup(vector)
    if result is None:
        raise ValueError("supremum of an empty family")
    return result


def infimum(vectors: Iterable[Vector]) -> Vector:
    """Поточечный инфимум конечного непустого семейства"""
    result: Optional[Vector] = None
    for vector in vectors:
        result = vector if result is None else result.inf(vector)
    if result is None:
        raise ValueError("infimum of an empty family")
    return result


# ---------------------------------------------------------------------------
# Компоненты e
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    """Компонента e: индикатор подмножества Ω (p ∧ (e - p) = 0)"""
    space: FiniteSpace
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.space.size:
            raise IncompatibleSpaces(f"mask {self.mask:b} exceeds n={self.space.size}")

    @classmethod
    def from_points(cls, space: FiniteSpace, points: Iterable[int]) -> "Component":
        mask = 0
        for point in points:
            if not 1 <= point <= space.size:
                raise IncompatibleSpaces(f"point {point} is outside 1..{space.size}")
            mask |= 1 << (point - 1)
        return cls(space, mask)

    @property
    def points(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.space.size) if self.mask >> i & 1)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.space.size) if self.mask >> i & 1)

    @property
    def vector(self) -> Vector:
        return Vector(
            self.space,
            tuple(ONE if self.mask >> i & 1 else ZERO for i in range(self.space.size)),
        )

    def __contains__(self, point: int) -> bool:
        return 1 <= point <= self.space.size and bool(self.mask >> (point - 1) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.points)

    def _mask(self, other: "Component") -> int:
        self.space.require_same(other.space)
        return other.mask

    def meet(self, other: "Component") -> "Component":
        return Component(self.space, self.mask & self._mask(other))

    def join(self, other: "Component") -> "Component":
        return Component(self.space, self.mask | self._mask(other))

    def complement(self) -> "Component":
        return Component(self.space, self.space.full.mask & ~self.mask)

    def difference(self, other: "Component") -> "Component":
        return Component(self.space, self.mask & ~self._mask(other))

    def is_empty(self) -> bool:
        return self.mask == 0

    def disjoint(self, other: "Component") -> bool:
        return self.mask & self._mask(other) == 0

    def __le__(self, other: "Component") -> bool:
        return self.mask & ~self._mask(other) == 0

    def sub_components(self) -> Iterator["Component"]:
        """Все q ≤ p (перебор подмасок, включая 0 и саму p)"""
        sub = self.mask
        while True:
            yield Component(self.space, sub)
            if sub == 0:
                return
            sub = (sub - 1) & self.mask

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.points) + "}"


def is_component(vector: Vector) -> bool:
    """p является компонентой e ⇔ все значения 0 или 1"""
    return all(v in (ZERO, ONE) for v in vector.values)


class ComponentAlgebra(NamedTuple):
    meet: Component
    join: Component
    complement: Component
    difference: Component


def component_algebra(p: Component, q: Component) -> ComponentAlgebra:
    """Булевы операции в C_e; complement относится к p"""
    return ComponentAlgebra(
        meet=p.meet(q),
        join=p.join(q),
        complement=p.complement(),
        difference=p.difference(q),
    )


# ---------------------------------------------------------------------------
# Решёточные операции, проекции, обратные, степени
# ---------------------------------------------------------------------------

class LatticeOps(NamedTuple):
    sup: Vector
    inf: Vector
    abs: Vector
    pos: Vector
    neg: Vector


def lattice_ops(f: Vector, g: Vector) -> LatticeOps:
    """sup/inf пары и |f|, f⁺, f⁻ поточечно"""
    f.space.require_same(g.space)
    return LatticeOps(sup=f.sup(g), inf=f.inf(g), abs=f.abs(), pos=f.pos(), neg=f.neg())


def band_projection(f: Vector, g: Vector) -> Vector:
    """P_f(g): g на носителе f и 0 вне его"""
    f.space.require_same(g.space)
    return Vector(g.space, tuple(b if a != 0 else ZERO for a, b in zip(f.values, g.values)))


def band_projection_complement(f: Vector, g: Vector) -> Vector:
    """Проекция на дизъюнктное дополнение B_f^d"""
    return g - band_projection(f, g)


def unit_projection(f: Vector) -> Vector:
    """P_f(e): индикатор носителя f"""
    return band_projection(f, f.space.unit)


def partial_inverse(f: Vector) -> Vector:
    """Каноническое частичное обратное: 1/f(ω) на носителе, 0 вне его"""
    return Vector(f.space, tuple(ONE / a if a != 0 else ZERO for a in f.values))


def integer_root(n: int, k: int) -> int:
    """⌊n^(1/k)⌋ для n ≥ 0 (метод Ньютона на целых)"""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def exact_root(value: Fraction, k: int) -> Fraction:
    """Точный корень степени k из неотрицательного рационального числа"""
    if value < 0:
        raise NegativeBase(f"root of negative value {value}", witness=value)
    num = integer_root(value.numerator, k)
    den = integer_root(value.denominator, k)
    if num ** k != value.numerator or den ** k != value.denominator:
        raise NonRationalRoot(f"{k}-th root of {value} is irrational", witness=value)
    return Fraction(num, den)


def _exact_power(value: Fraction, p: Fraction) -> Fraction:
    if p.denominator == 1:
        return value ** p.numerator
    if value < 0:
        raise NegativeBase(f"fractional power {p} of negative value {value}", witness=value)
    return exact_root(value, p.denominator) ** p.numerator


def power(f: Vector, p: ScalarLike, mode: str = "exact",
          tolerance: float = 1e-12) -> Union[Vector, FloatVector]:
    """
    Поточечная p-я степень (функциональное исчисление для x ↦ x^p)

    Args:
        f: Вектор (f ≥ 0, если p не целое)
        p: Положительный рациональный показатель
        mode: "exact" (ошибка на иррациональном корне) или "float"
        tolerance: Заявленная точность float-режима

    Returns:
        Vector в точном режиме, FloatVector в float-режиме
    """
    p = as_fraction(p)
    if p <= 0:
        raise InvalidExponent(f"exponent must be positive, got {p}")
    if mode == "exact":
        return Vector(f.space, tuple(_exact_power(a, p) for a in f.values))
    if mode == "float":
        if p.denominator != 1 and any(a < 0 for a in f.values):
            raise NegativeBase(f"fractional power {p} of a vector with negative entries")
        exponent = p.numerator if p.denominator == 1 else float(p)
        return FloatVector(f.space, tuple(float(a) ** exponent for a in f.values), tolerance)
    raise ValueError(f"unknown power mode '{mode}'")


# ---------------------------------------------------------------------------
# Ступенчатые функции со скалярными коэффициентами и Фрейденталь
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealizedStep:
    """Скалярная e-ступенчатая функция Σ cᵢ·pᵢ с попарно дизъюнктными pᵢ"""
    space: FiniteSpace
    coefficients: Tuple[Tuple[Fraction, Component], ...]

    def __post_init__(self):
        seen = 0
        for _, component in self.coefficients:
            self.space.require_same(component.space)
            if component.mask & seen:
                raise ValueError(f"step components overlap at {component}")
            seen |= component.mask

    @classmethod
    def from_vector(cls, f: Vector) -> "RealizedStep":
        """Разложение по множествам уровня (нулевой уровень опускается)"""
        levels: dict = {}
        for index, value in enumerate(f.values):
            if value != 0:
                levels[value] = levels.get(value, 0) | (1 << index)
        return cls(f.space, tuple(
            (value, Component(f.space, mask)) for value, mask in sorted(levels.items())
        ))

    def realize(self) -> Vector:
        result = self.space.zero
        for coefficient, component in self.coefficients:
            result = result + component.vector * coefficient
        return result


def dominating_scale(f: Vector, u: Vector) -> Fraction:
    """Наименьшее c ≥ 0 с f ≤ c·u; NotDominated, если такого нет"""
    f.space.require_same(u.space)
    if not u.is_positive():
        raise NotPositive(f"bound {u} must be positive")
    scale = ZERO
    for point, (a, b) in enumerate(zip(f.values, u.values), start=1):
        if b == 0:
            if a > 0:
                raise NotDominated(f"f({point}) = {a} > 0 but u({point}) = 0", witness=point)
            continue
        scale = max(scale, a / b)
    return scale


def dyadic_floor(f: Vector, u: Vector, scale: Fraction, level: int) -> Vector:
    """⌊2^j·f/(c·u)⌋·c·u/2^j поточечно (0 там, где c·u = 0)"""
    grid = 2 ** level
    values = []
    for a, b in zip(f.values, u.values):
        step = scale * b
        values.append(Fraction(math.floor(a * grid / step)) * step / grid if step else ZERO)
    return Vector(f.space, tuple(values))


def freudenthal_sequence(f: Vector, bound: Vector, steps: int,
                         scale: Optional[ScalarLike] = None) -> List[RealizedStep]:
    """
    Возрастающая последовательность ступенчатых функций s_1 ≤ ... ≤ s_k ≤ f
    с f - s_j ≤ 2^{-j}·c·u (диадические множества уровня)

    Args:
        f: Положительный вектор
        bound: u ≥ 0, f ≤ c·u
        steps: Число стадий k
        scale: c; по умолчанию наименьшее допустимое

    Returns:
        Список из k RealizedStep
    """
    if not f.is_positive():
        raise NotPositive(f"freudenthal approximation needs f ≥ 0, got {f}")
    c = dominating_scale(f, bound) if scale is None else as_fraction(scale)
    if not f <= bound * c:
        raise NotDominated(f"f is not dominated by {c}·u")
    logger.debug("freudenthal: c=%s, steps=%d", c, steps)
    return [RealizedStep.from_vector(dyadic_floor(f, bound, c, j)) for j in range(1, steps + 1)]

