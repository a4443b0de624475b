"""
Функционалы с ядром: φ(g) = T(hg)

Для L¹(T) ядро h лежит в L^∞(T), для L²(T) - в L²(T); на конечной модели
оба пространства совпадают с E, так что отличаются только нормы.
"""
import logging
from dataclasses import dataclass

from core.cond_exp import CondExp, RTVector
from core.duality.base import DualFunctional, require_homogeneous
from core.lattice import Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelFunctional(DualFunctional):
    """g ↦ T(h·g)"""
    cond_exp: CondExp
    kernel: Vector

    kind = "kernel"

    def __post_init__(self):
        self.cond_exp.space.require_same(self.kernel.space)

    @property
    def operator(self) -> CondExp:
        return self.cond_exp

    def apply(self, f: Vector) -> RTVector:
        return self.cond_exp(self.kernel * f)


def recover_kernel(phi: DualFunctional) -> Vector:
    """
    h(ω) = φ(1_ω)(ω)·M_i / μ({ω}), где M_i - масса блока ω

    Следует из T(h·1_ω) = h(ω)·μ({ω})/M_i на блоке ω.
    """
    require_homogeneous(phi)
    T = phi.operator
    values = []
    for point, column in zip(T.space.points, phi.columns()):
        index = T.partition.block_index(point)
        values.append(column.at(point) * T.block_masses[index] / T.space.weights[point - 1])
    return Vector(T.space, tuple(values))


def l1_representation(T: CondExp, f: Vector) -> KernelFunctional:
    """f ∈ L^∞(T) ↦ (g ↦ T(fg)) ∈ L̂¹(T)"""
    return KernelFunctional(T, f)


def l1_recover(phi: DualFunctional) -> Vector:
    return recover_kernel(phi)


def l2_representation(T: CondExp, f: Vector) -> KernelFunctional:
    """f ∈ L²(T) ↦ (g ↦ T(fg)) ∈ L̂²(T)"""
    return KernelFunctional(T, f)


def l2_recover(phi: DualFunctional) -> Vector:
    h = recover_kernel(phi)
    logger.debug("recovered L² kernel %s", h)
    return h
