"""
Переборные оракулы

Медленные, но очевидно правильные вычисления, с которыми сверяются
замкнутые формулы: разбиения множества, знаковые векторы, вершины
коробок, супремумы Рисса-Канторовича по сетке.
"""
import itertools
import logging
from fractions import Fraction
from typing import Callable, Iterator, List, Sequence, Tuple

from core.config import settings
from core.errors import NotPositive, TooLarge
from core.lattice import Component, Vector, supremum

logger = logging.getLogger(__name__)

# Линейное отображение E → E, заданное своим действием
LinearMap = Callable[[Vector], Vector]


def require_enumerable(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise TooLarge(f"{what}: n={n} exceeds the enumeration bound {limit}", witness=n)


def set_partitions(points: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    """Все разбиения конечного множества (их число - число Белла)"""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for partial in set_partitions(rest):
        yield [(first,)] + partial
        for index, block in enumerate(partial):
            yield partial[:index] + [(first,) + block] + partial[index + 1:]


def component_partitions(component: Component) -> Iterator[List[Component]]:
    """Разбиения компоненты на непустые дизъюнктные компоненты"""
    require_enumerable(len(component), settings.VARIATION_MAX_OMEGA, "partition enumeration")
    space = component.space
    for partition in set_partitions(component.points):
        yield [Component.from_points(space, block) for block in partition]


def sign_vectors(n: int) -> Iterator[Tuple[int, ...]]:
    """{-1, +1}^n: вершины шара ‖·‖_{T,∞} ≤ e"""
    require_enumerable(n, settings.ENUMERATION_MAX_OMEGA, "sign patterns")
    return itertools.product((-1, 1), repeat=n)


def ternary_vectors(n: int) -> Iterator[Tuple[int, ...]]:
    """{-1, 0, +1}^n"""
    require_enumerable(n, settings.ENUMERATION_MAX_OMEGA, "ternary patterns")
    return itertools.product((-1, 0, 1), repeat=n)


def vertex_patterns(n: int) -> Iterator[Tuple[int, ...]]:
    """{0, 1}^n: вершины порядкового интервала [0, f]"""
    require_enumerable(n, settings.ENUMERATION_MAX_OMEGA, "vertex patterns")
    return itertools.product((0, 1), repeat=n)


def _scaled(f: Vector, pattern: Sequence) -> Vector:
    """f·s на носителе f; pattern задаёт множители только для точек носителя"""
    values = list(f.values)
    for index, s in zip(f.support.indices, pattern):
        values[index] = values[index] * s
    return Vector(f.space, tuple(values))


def modulus_oracle(operator: LinearMap, f: Vector) -> Vector:
    """|φ|(f) = sup{|φ(g)| : |g| ≤ f} по вершинам g = s·f, s ∈ {±1}^n"""
    if not f.is_positive():
        raise NotPositive(f"modulus is evaluated at f ≥ 0, got {f}")
    return supremum(operator(_scaled(f, signs)) for signs in sign_vectors(len(f.support)))


def operator_sup_oracle(first: LinearMap, second: LinearMap, f: Vector) -> Vector:
    """(φ ∨ ψ)(f) = sup{φ(g) + ψ(f - g) : 0 ≤ g ≤ f} по вершинам интервала"""
    if not f.is_positive():
        raise NotPositive(f"operator supremum is evaluated at f ≥ 0, got {f}")
    values = []
    for pattern in vertex_patterns(len(f.support)):
        g = _scaled(f, pattern)
        values.append(first(g) + second(f - g))
    return supremum(values)


def operator_inf_oracle(first: LinearMap, second: LinearMap, f: Vector) -> Vector:
    """(φ ∧ ψ)(f) = inf{φ(g) + ψ(f - g) : 0 ≤ g ≤ f}"""
    return -operator_sup_oracle(lambda g: -first(g), lambda g: -second(g), f)


def grid(f: Vector, levels: int) -> Iterator[Vector]:
    """Сетка {0, f/K, ..., f}^n внутри [0, f]; вне носителя f координаты нулевые"""
    steps = [Fraction(k, levels) for k in range(levels + 1)]
    for pattern in itertools.product(steps, repeat=len(f.support)):
        yield _scaled(f, pattern)


def positive_part_oracle(operator: LinearMap, f: Vector, max_levels: int = 8) -> Vector:
    """
    T⁺(f) = sup{T(g) : 0 ≤ g ≤ f} по сетке, измельчаемой вдвое до стабилизации

    Args:
        operator: Линейный оператор E → E
        f: Положительный вектор
        max_levels: Предельное число делений сетки

    Returns:
        Супремум по последней сетке
    """
    if not f.is_positive():
        raise NotPositive(f"positive part is evaluated at f ≥ 0, got {f}")
    levels = 1
    previous = supremum(operator(g) for g in grid(f, levels))
    while levels < max_levels:
        levels *= 2
        current = supremum(operator(g) for g in grid(f, levels))
        if current == previous:
            break
        previous = current
    logger.debug("positive part oracle stabilised at K=%d", levels)
    return previous
