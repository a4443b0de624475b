"""
Детерминированная генерация случайных экземпляров

Числители из [-9, 9], знаменатели из {1, 2, 3, 4}; один и тот же seed
даёт одну и ту же последовательность экземпляров.
"""
import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np

from core.charges import Charge
from core.cond_exp import CondExp, Partition, make_cond_exp
from core.config import settings
from core.integration import StepFunction
from core.lattice import Component, FiniteSpace, Vector, band_projection

logger = logging.getLogger(__name__)

DENOMINATORS = (1, 2, 3, 4)


class InstanceFactory:
    """Источник случайных пространств, операторов, векторов и зарядов"""

    def __init__(self, seed: Optional[int] = None):
        self.seed = settings.LAB_SEED if seed is None else seed
        self.rng = np.random.default_rng(self.seed)

    def rational(self, positive: bool = False) -> Fraction:
        low = 1 if positive else -9
        numerator = int(self.rng.integers(low, 10))
        denominator = int(self.rng.choice(DENOMINATORS))
        return Fraction(numerator, denominator)

    def size(self, max_omega: Optional[int] = None) -> int:
        high = settings.MAX_OMEGA if max_omega is None else max_omega
        low = min(settings.MIN_OMEGA, high)
        return int(self.rng.integers(low, high + 1))

    def space(self, n: Optional[int] = None, max_omega: Optional[int] = None) -> FiniteSpace:
        n = self.size(max_omega) if n is None else n
        return FiniteSpace(tuple(self.rational(positive=True) for _ in range(n)))

    def partition(self, space: FiniteSpace) -> Partition:
        """Случайные метки блоков, перенумерованные по первому появлению"""
        labels = [int(x) for x in self.rng.integers(0, space.size, size=space.size)]
        order: List[int] = []
        for label in labels:
            if label not in order:
                order.append(label)
        blocks = [[point for point, label in zip(space.points, labels) if label == wanted]
                  for wanted in order]
        return Partition.of(space, blocks)

    def cond_exp(self, n: Optional[int] = None, max_omega: Optional[int] = None) -> CondExp:
        space = self.space(n, max_omega)
        return make_cond_exp(space, self.partition(space))

    def vector(self, space: FiniteSpace, positive: bool = False) -> Vector:
        values = []
        for _ in space.points:
            value = self.rational()
            values.append(abs(value) if positive else value)
        return Vector(space, tuple(values))

    def range_vector(self, T: CondExp, positive: bool = False) -> Vector:
        values = []
        for _ in T.blocks:
            value = self.rational()
            values.append(abs(value) if positive else value)
        return T.range_vector(values)

    def component(self, space: FiniteSpace) -> Component:
        return Component(space, int(self.rng.integers(0, 1 << space.size)))

    def charge(self, T: CondExp, absolutely_continuous: bool = False,
               positive: bool = False) -> Charge:
        """Атомные значения - случайные элементы R(T); при ≪ T обрезаются по блоку"""
        values = []
        for point in T.space.points:
            value = self.range_vector(T, positive)
            if absolutely_continuous:
                value = band_projection(T.partition.block_of(point).vector, value)
            values.append(value)
        return Charge(T, tuple(values))

    def step_function(self, T: CondExp) -> StepFunction:
        """Случайное дизъюнктное семейство компонент с R(T)-коэффициентами"""
        labels = [int(x) for x in self.rng.integers(-1, T.space.size, size=T.space.size)]
        terms = []
        for label in sorted(set(labels) - {-1}):
            points = [point for point, value in zip(T.space.points, labels) if value == label]
            terms.append((self.range_vector(T), Component.from_points(T.space, points)))
        return StepFunction(T, tuple(terms))
