"""
R(T)-значная двойственная норма ‖φ‖_{L̂^p(T)} и решётка функционалов

Для p ∈ {1, ∞} единичные шары - многогранники, и супремумы берутся
точно по вершинам: по атомам для p = 1, по знаковым векторам для p = ∞.
Для p = 2 всё хранится в квадратах.
"""
import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from core.cond_exp import INF, CondExp, Exponent, RTVector, norm_Tinf, norm_Tp_pow
from core.duality.base import (
    DualFunctional, RawFunctional, functional_scale, functional_sum, require_homogeneous,
)
from core.duality.kernel import KernelFunctional, l2_recover, recover_kernel
from core.errors import InvalidExponent, NotBounded, Unsupported
from core.lattice import Vector, partial_inverse, supremum
from core.oracles import (
    modulus_oracle, operator_inf_oracle, operator_sup_oracle, positive_part_oracle,
    ternary_vectors,
)

logger = logging.getLogger(__name__)


def _require_exponent(p: Exponent) -> Exponent:
    if p not in (1, 2, INF):
        raise InvalidExponent(f"dual norms are implemented for p ∈ {{1, 2, ∞}}, got {p}")
    return p


def _atom_vertices(T: CondExp) -> List[Vector]:
    """Вершины шара ‖f‖_{T,1} ≤ e: ±T(1_ω)⁻¹·1_ω"""
    vertices = []
    for atom in T.space.atoms():
        v = partial_inverse(T(atom.vector)) * atom.vector
        vertices += [v, -v]
    return vertices


def dual_norm(phi: DualFunctional, p: Exponent) -> RTVector:
    """
    ‖φ‖ в L̂^p(T)

    Args:
        p: 1, 2 или INF

    Returns:
        Для p = 1 и ∞ - точная норма; для p = 2 - её квадрат T(h²)

    Raises:
        Unsupported: p = 2 для не-ядерного вида (сначала l2_recover)
        NotHomogeneous: φ не R(T)-однороден
    """
    _require_exponent(p)
    T = phi.operator
    if p == 2:
        if not isinstance(phi, KernelFunctional):
            raise Unsupported(
                f"p=2 dual norm needs a kernel functional, got {phi.kind}; use l2_recover first"
            )
        return norm_Tp_pow(T, phi.kernel, 2)
    require_homogeneous(phi)
    if p == 1:
        return supremum(
            [T.space.zero]
            + [column.abs() * partial_inverse(T(atom.vector))
               for atom, column in zip(T.space.atoms(), phi.columns())]
        )
    return modulus_oracle(phi, T.space.unit)


class DualNormRepresentations(NamedTuple):
    """Три независимо вычисленные характеристики нормы"""
    infimum: RTVector
    unit_ball_sup: RTVector
    normalized_sup: RTVector

    @property
    def agree(self) -> bool:
        return self.infimum == self.unit_ball_sup == self.normalized_sup


def dual_norm_representations(phi: DualFunctional, p: Exponent) -> DualNormRepresentations:
    """
    inf{k : |φ(f)| ≤ k‖f‖}, sup{|φ(f)| : ‖f‖ ≤ e} и sup{|φ(f)|·‖f‖⁻¹}

    Для p = 2 значения - квадраты; нормированный супремум берётся в точке
    Коши-Буняковского g = h.
    """
    _require_exponent(p)
    require_homogeneous(phi)
    T = phi.operator
    space = T.space
    zero = space.zero
    if p == 1:
        infimum = norm_Tinf(T, recover_kernel(phi))
        unit_ball = supremum([zero] + [phi(v).abs() for v in _atom_vertices(T)])
        normalized = supremum(
            phi(q.vector).abs() * partial_inverse(T(q.vector))
            for q in space.components()
        )
    elif p == INF:
        infimum = sum((column.abs() for column in phi.columns()), zero)
        unit_ball = modulus_oracle(phi, space.unit)
        normalized = supremum(
            phi(f).abs() * partial_inverse(norm_Tinf(T, f))
            for f in (space.vector(list(signs)) for signs in ternary_vectors(space.size))
        )
    else:
        h = phi.kernel if isinstance(phi, KernelFunctional) else l2_recover(phi)
        infimum = norm_Tp_pow(T, h, 2)
        tests = [q.vector for q in space.components()] + [h]
        unit_ball = supremum(
            _squared(phi(g)) * partial_inverse(norm_Tp_pow(T, g, 2)) for g in tests
        )
        normalized = _squared(phi(h)) * partial_inverse(infimum)
    return DualNormRepresentations(infimum, unit_ball, normalized)


def _squared(v: Vector) -> Vector:
    return v * v


def cauchy_schwarz_certificate(phi: KernelFunctional, g: Vector) -> bool:
    """φ(g)² ≤ T(h²)·T(g²) поблочно"""
    T = phi.operator
    return _squared(phi(g)) <= norm_Tp_pow(T, phi.kernel, 2) * norm_Tp_pow(T, g, 2)


def check_bounded(phi: DualFunctional, p: Exponent) -> RTVector:
    """
    Проверить |φ(v)| ≤ k·‖v‖_{T,p} в вершинах единичного шара

    Returns:
        Константа k (замкнутая форма нормы)
    """
    T = phi.operator
    k = dual_norm(phi, p)
    if p == INF:
        tests = [T.space.unit, -T.space.unit] + [atom.vector for atom in T.space.atoms()]
        for f in tests:
            if not phi(f).abs() <= k * norm_Tinf(T, f):
                raise NotBounded(f"|φ({f})| exceeds {k}·‖f‖_T,∞", witness=f)
    elif p == 1:
        for v in _atom_vertices(T):
            if not phi(v).abs() <= k * T(v.abs()):
                raise NotBounded(f"|φ({v})| exceeds {k}·‖v‖_T,1", witness=v)
    return k


# ---------------------------------------------------------------------------
# Аксиомы нормы
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormAxiomReport:
    triangle: bool
    homogeneity: bool
    definiteness: bool

    @property
    def passed(self) -> bool:
        return self.triangle and self.homogeneity and self.definiteness


def dual_norm_axioms(phi: DualFunctional, psi: DualFunctional, g: RTVector,
                     p: Exponent) -> NormAxiomReport:
    """Треугольник, |g|-однородность и невырожденность R(T)-значной нормы"""
    if p == 2:
        # в квадратах треугольник не линеен: сравниваются ядра
        phi = KernelFunctional(phi.operator, l2_recover(phi))
        psi = KernelFunctional(psi.operator, l2_recover(psi))
        T = phi.operator
        total = KernelFunctional(T, phi.kernel + psi.kernel)
        a, b, c = dual_norm(phi, 2), dual_norm(psi, 2), dual_norm(total, 2)
        cross = T((phi.kernel * psi.kernel).abs())
        triangle = c <= a + b + cross * 2 and cross * cross <= a * b
        scaled = KernelFunctional(T, phi.kernel * g)
        homogeneity = dual_norm(scaled, 2) == _squared(g) * a
        definiteness = a.is_zero() == phi.is_zero()
        return NormAxiomReport(triangle, homogeneity, definiteness)
    total = functional_sum(phi, psi)
    norm = dual_norm(phi, p)
    triangle = dual_norm(total, p) <= norm + dual_norm(psi, p)
    homogeneity = dual_norm(functional_scale(phi, g), p) == g.abs() * norm
    definiteness = norm.is_zero() == phi.is_zero()
    return NormAxiomReport(triangle, homogeneity, definiteness)


# ---------------------------------------------------------------------------
# Решётка функционалов
# ---------------------------------------------------------------------------

class FunctionalLattice(NamedTuple):
    sup: RawFunctional
    inf: RawFunctional
    abs: RawFunctional
    pos: RawFunctional
    neg: RawFunctional


def functional_lattice(phi: DualFunctional, psi: DualFunctional) -> FunctionalLattice:
    """
    Замкнутые формулы: (φ ∨ ψ)(1_ω) = φ(1_ω) ∨ ψ(1_ω) и т.д. по атомам
    (интервал [0, 1_ω] одномерен, супремум берётся в его концах)
    """
    T = phi.operator
    pairs = list(zip(phi.columns(), psi.columns()))
    columns = phi.columns()
    return FunctionalLattice(
        sup=RawFunctional(T, tuple(a.sup(b) for a, b in pairs)),
        inf=RawFunctional(T, tuple(a.inf(b) for a, b in pairs)),
        abs=RawFunctional(T, tuple(a.abs() for a in columns)),
        pos=RawFunctional(T, tuple(a.pos() for a in columns)),
        neg=RawFunctional(T, tuple(a.neg() for a in columns)),
    )


def functional_lattice_oracle(phi: DualFunctional, psi: DualFunctional,
                              f: Vector) -> Tuple[RTVector, RTVector, RTVector]:
    """(φ∨ψ)(f), (φ∧ψ)(f), |φ|(f) перебором вершин для f ≥ 0"""
    return (
        operator_sup_oracle(phi, psi, f),
        operator_inf_oracle(phi, psi, f),
        modulus_oracle(phi, f),
    )


def positive_part_by_oracle(phi: DualFunctional) -> RawFunctional:
    """φ⁺ по формуле Рисса-Канторовича на сетке, столбец за столбцом"""
    T = phi.operator
    return RawFunctional(T, tuple(
        positive_part_oracle(phi, atom.vector) for atom in T.space.atoms()
    ))


# ---------------------------------------------------------------------------
# Идеал в двойственном
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualIdealReport:
    dominated: bool
    bound: RTVector
    chain_holds: bool
    inherited: bool
    witness: Optional[Vector] = None

    @property
    def passed(self) -> bool:
        return self.dominated and self.chain_holds and self.inherited


def dual_ideal_check(phi: DualFunctional, psi: DualFunctional, p: Exponent,
                     test_vectors: Sequence[Vector] = ()) -> DualIdealReport:
    """
    При |φ| ≤ |ψ| φ наследует оценку ψ с той же константой:
    |φ(f)| ≤ |φ|(|f|) ≤ |ψ|(|f|) ≤ k·‖f‖_{T,p}
    """
    _require_exponent(p)
    require_homogeneous(phi)
    require_homogeneous(psi)
    T = phi.operator
    space = T.space
    atoms = [atom.vector for atom in space.atoms()]
    dominated = all(modulus_oracle(phi, a) <= modulus_oracle(psi, a) for a in atoms)

    if p == 2:
        phi = KernelFunctional(T, l2_recover(phi))
        psi = KernelFunctional(T, l2_recover(psi))
    k = dual_norm(psi, p)
    tests = atoms + [space.unit] + list(test_vectors)
    if p == 1:
        tests += _atom_vertices(T)
    witness = None
    for f in tests:
        lhs = phi(f).abs()
        middle = modulus_oracle(phi, f.abs())
        upper = modulus_oracle(psi, f.abs())
        if p == 1:
            ok = lhs <= middle <= upper <= k * T(f.abs())
        elif p == INF:
            ok = lhs <= middle <= upper <= k * norm_Tinf(T, f)
        else:
            ok = lhs <= middle <= upper and _squared(upper) <= k * norm_Tp_pow(T, f, 2)
        if not ok:
            witness = f
            break
    inherited = dual_norm(phi, p) <= k
    logger.debug("dual ideal check p=%s: dominated=%s, chain=%s", p, dominated, witness is None)
    return DualIdealReport(dominated, k, witness is None, inherited, witness)
