"""
Разложение по блокам разбиения

Каждый блок Ω_i даёт свою тройку с единственным блоком, R(T_i) = ℝ·1_{Ω_i}.
Функционалы и заряды над T распадаются в произведение блочных, обратная
сборка идёт через продолжения нулём.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from core.charges import Charge
from core.cond_exp import CondExp, Exponent, Partition, RTVector, make_cond_exp
from core.duality.base import DualFunctional, RawFunctional, require_homogeneous
from core.duality.norms import dual_norm
from core.errors import IncompatibleSpaces, InvalidExponent
from core.integration import require_abs_continuous
from core.lattice import ZERO, Component, FiniteSpace, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZeroExtension:
    """Вектор на блоке Ω_i, продолженный нулём на всё Ω"""
    block: int
    values: Tuple[Fraction, ...]

    def extend(self, T: CondExp) -> Vector:
        points = T.blocks[self.block].indices
        if len(points) != len(self.values):
            raise IncompatibleSpaces(f"block #{self.block + 1} has {len(points)} points")
        values = [ZERO] * T.space.size
        for i, value in zip(points, self.values):
            values[i] = value
        return Vector(T.space, tuple(values))


@dataclass(frozen=True)
class BlockTriple:
    """Блок Ω_i как самостоятельная модель с T_i = усреднение по всему блоку"""
    index: int
    points: Component
    cond_exp: CondExp

    @property
    def space(self) -> FiniteSpace:
        return self.cond_exp.space

    def restrict(self, f: Vector) -> Vector:
        """f|_{Ω_i}"""
        return Vector(self.space, tuple(f.values[i] for i in self.points.indices))

    def zero_extension(self, v: Vector) -> ZeroExtension:
        self.space.require_same(v.space)
        return ZeroExtension(self.index, v.values)

    def scalar_action(self, phi: DualFunctional, f: Vector) -> Fraction:
        """Функционал со значениями в ℝ·1_{Ω_i} как скалярный: f ↦ φ(f)(ω₀)"""
        return phi(f).values[0]


@dataclass(frozen=True)
class ProductDecomposition:
    """T и его блочные тройки с отображениями Ψ (расщепление) и Φ (сборка)"""
    cond_exp: CondExp
    triples: Tuple[BlockTriple, ...]

    def split_functional(self, phi: DualFunctional) -> Tuple[RawFunctional, ...]:
        """Ψ: φ_i(f_i) = φ(продолжение f_i нулём)|_{Ω_i}"""
        require_homogeneous(phi)
        columns = phi.columns()
        parts = []
        for triple in self.triples:
            parts.append(RawFunctional(triple.cond_exp, tuple(
                triple.restrict(columns[i]) for i in triple.points.indices
            )))
        return tuple(parts)

    def assemble_functional(self, parts: Sequence[DualFunctional]) -> RawFunctional:
        """Φ: φ(f) = Σ_i zero-extension of φ_i(f|_{Ω_i})"""
        T = self.cond_exp
        self._check_parts(parts)
        images = [T.space.zero] * T.space.size
        for triple, part in zip(self.triples, parts):
            for local, i in enumerate(triple.points.indices):
                image = part.columns()[local]
                images[i] = triple.zero_extension(image).extend(T)
        return RawFunctional(T, tuple(images))

    def split_charge(self, mu: Charge) -> Tuple[Charge, ...]:
        """μ ↦ (μ_i): атомные значения, сужённые на свой блок (нужно μ ≪ T)"""
        require_abs_continuous(mu)
        return tuple(
            Charge(triple.cond_exp, tuple(triple.restrict(mu.atom_values[i])
                                          for i in triple.points.indices))
            for triple in self.triples
        )

    def assemble_charge(self, parts: Sequence[Charge]) -> Charge:
        T = self.cond_exp
        self._check_parts(parts)
        values = [T.space.zero] * T.space.size
        for triple, part in zip(self.triples, parts):
            for local, i in enumerate(triple.points.indices):
                values[i] = triple.zero_extension(part.atom_values[local]).extend(T)
        return Charge(T, tuple(values))

    def product_norm(self, parts: Sequence[DualFunctional], p: Exponent) -> RTVector:
        """Σ_i продолжение нулём ‖φ_i‖: на блоке Ω_i стоит норма φ_i"""
        if p == 2:
            raise InvalidExponent("product norms are assembled for p ∈ {1, ∞}")
        T = self.cond_exp
        self._check_parts(parts)
        total = T.space.zero
        for triple, part in zip(self.triples, parts):
            total = total + triple.zero_extension(dual_norm(part, p)).extend(T)
        return total

    def _check_parts(self, parts: Sequence) -> None:
        if len(parts) != len(self.triples):
            raise IncompatibleSpaces(f"expected {len(self.triples)} block parts, got {len(parts)}")


def product_decomposition(T: CondExp) -> ProductDecomposition:
    """Разбить T на блочные тройки (Ω_i, μ|_{Ω_i}, T_i)"""
    triples = []
    for index, block in enumerate(T.blocks):
        space = FiniteSpace(tuple(T.space.weights[i] for i in block.indices))
        local = make_cond_exp(space, Partition.trivial(space))
        triples.append(BlockTriple(index, block, local))
    logger.debug("product decomposition of %s into %d blocks", T, len(triples))
    return ProductDecomposition(T, tuple(triples))
