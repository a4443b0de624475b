"""
Базовый класс для функционалов T-сильного двойственного
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

from core.cond_exp import CondExp, RTVector
from core.errors import IncompatibleSpaces, NotHomogeneous
from core.lattice import Vector


class DualFunctional(ABC):
    """
    Линейное отображение φ: E → R(T)

    Конкретные виды: ядро (φ(g) = T(hg)), заряд (φ(f) = ∫f dμ) и
    сырая таблица образов атомов.
    """

    kind: str = "abstract"

    @property
    @abstractmethod
    def operator(self) -> CondExp:
        """Условное ожидание T, над которым задан функционал"""
        pass

    @abstractmethod
    def apply(self, f: Vector) -> RTVector:
        """
        Значение φ(f)

        Returns:
            Элемент R(T)
        """
        pass

    def __call__(self, f: Vector) -> RTVector:
        self.operator.space.require_same(f.space)
        return self.apply(f)

    def columns(self) -> Tuple[RTVector, ...]:
        """Образы атомов φ(1_ω); линейный φ ими определяется"""
        return tuple(self(atom.vector) for atom in self.operator.space.atoms())

    def same_action(self, other: "DualFunctional") -> bool:
        return self.operator == other.operator and self.columns() == other.columns()

    def is_positive(self) -> bool:
        return all(column.is_positive() for column in self.columns())

    def is_zero(self) -> bool:
        return all(column.is_zero() for column in self.columns())


@dataclass(frozen=True)
class RawFunctional(DualFunctional):
    """φ(f) = Σ f(ω)·images[ω-1]; образы должны лежать в R(T)"""
    cond_exp: CondExp
    images: Tuple[Vector, ...]

    kind = "raw"

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.cond_exp.space.size:
            raise IncompatibleSpaces(
                f"raw functional needs {self.cond_exp.space.size} atom images, got {len(images)}"
            )
        for point, image in enumerate(images, start=1):
            self.cond_exp.require_range(image, f"image of atom {point}")

    @classmethod
    def from_rows(cls, T: CondExp, rows) -> "RawFunctional":
        return cls(T, tuple(T.space.vector(list(row)) for row in rows))

    @classmethod
    def of(cls, functional: DualFunctional) -> "RawFunctional":
        """Сырая таблица любого функционала"""
        return cls(functional.operator, functional.columns())

    @property
    def operator(self) -> CondExp:
        return self.cond_exp

    def apply(self, f: Vector) -> RTVector:
        result = f.space.zero
        for value, image in zip(f.values, self.images):
            result = result + image * value
        return result

    def columns(self) -> Tuple[RTVector, ...]:
        return self.images


def homogeneity_witness(phi: DualFunctional) -> Optional[Tuple[RTVector, Vector]]:
    """
    Пара (g, f) с φ(gf) ≠ g·φ(f), g ∈ R(T), или None

    φ однороден над R(T) ⇔ каждый образ φ(1_ω) сосредоточен на блоке ω;
    для нарушителя берутся g = 1_{блок(ω)} и f = 1_ω.
    """
    T = phi.operator
    for point, column in zip(T.space.points, phi.columns()):
        block = T.partition.block_of(point)
        if not column.support <= block:
            g, f = block.vector, T.space.atom(point).vector
            if phi(g * f) != g * phi(f):
                return g, f
    return None


def require_homogeneous(phi: DualFunctional) -> DualFunctional:
    witness = homogeneity_witness(phi)
    if witness is not None:
        g, f = witness
        raise NotHomogeneous(
            f"φ({g}·{f}) = {phi(g * f)} but {g}·φ({f}) = {g * phi(f)}", witness=witness
        )
    return phi


def functional_sum(phi: DualFunctional, psi: DualFunctional) -> RawFunctional:
    if phi.operator != psi.operator:
        raise IncompatibleSpaces("functionals belong to different operators T")
    return RawFunctional(phi.operator, tuple(a + b for a, b in zip(phi.columns(), psi.columns())))


def functional_scale(phi: DualFunctional, g) -> RawFunctional:
    """g·φ для g ∈ R(T) или скаляра"""
    if isinstance(g, Vector):
        phi.operator.require_range(g, "module scalar")
    return RawFunctional(phi.operator, tuple(column * g for column in phi.columns()))
