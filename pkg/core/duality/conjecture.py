"""
Численный эксперимент: совпадает ли ‖g ↦ T(fg)‖_{L̂^p(T)} с ‖f‖_{T,q}
при p ∈ (1, ∞)

Это свидетельство, а не доказательство: арифметика float, максимизация
BFGS из многих стартовых точек. На каждом блоке максимизируется
масштабно-инвариантное отношение ⟨a, u⟩ / N_p(u), где a = ν·f,
N_p(u) = (Σ ν|u|^p)^{1/p}, ν - нормированные веса блока; затем лучший u
нормируется на сферу T(|g|^p) = e.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy import optimize

from core.cond_exp import CondExp
from core.config import settings
from core.duality.kernel import l2_representation
from core.duality.norms import dual_norm
from core.errors import InvalidExponent
from core.instances import InstanceFactory
from core.lattice import Vector

logger = logging.getLogger(__name__)

RealExponent = Union[float, Fraction, int]


@dataclass(frozen=True)
class BlockProbe:
    """Результат на одном блоке"""
    block: int
    numeric: float
    exact: float
    attainer: Tuple[float, ...]

    @property
    def gap(self) -> float:
        if self.exact == 0.0:
            return abs(self.numeric)
        return abs(self.exact - self.numeric) / abs(self.exact)


@dataclass(frozen=True)
class InstanceProbe:
    """Один f: поблочные числа и лучший g на единичной сфере"""
    f: Tuple[float, ...]
    blocks: Tuple[BlockProbe, ...]

    @property
    def gap(self) -> float:
        return max((block.gap for block in self.blocks), default=0.0)

    @property
    def numeric(self) -> Tuple[float, ...]:
        return tuple(block.numeric for block in self.blocks)

    @property
    def exact(self) -> Tuple[float, ...]:
        return tuple(block.exact for block in self.blocks)

    @property
    def attainer(self) -> Tuple[float, ...]:
        return tuple(x for block in self.blocks for x in block.attainer)


@dataclass(frozen=True)
class ProbeResult:
    p: float
    q: float
    restarts: int
    tol: float
    instances: Tuple[InstanceProbe, ...]

    @property
    def max_gap(self) -> float:
        return max((instance.gap for instance in self.instances), default=0.0)

    @property
    def pass_share(self) -> float:
        if not self.instances:
            return 1.0
        return sum(instance.gap <= self.tol for instance in self.instances) / len(self.instances)


def conjugate(p: float) -> float:
    return p / (p - 1.0)


def _ratio_and_gradient(u: np.ndarray, a: np.ndarray, nu: np.ndarray,
                        p: float) -> Tuple[float, np.ndarray]:
    """-R(u) и его градиент для минимизации, R(u) = ⟨a,u⟩ / N_p(u)"""
    magnitude = np.abs(u)
    norm = float(np.sum(nu * magnitude ** p)) ** (1.0 / p)
    if norm == 0.0:
        return 0.0, -a
    inner = float(a @ u)
    d_norm = nu * magnitude ** (p - 1.0) * np.sign(u) * norm ** (1.0 - p)
    gradient = a / norm - inner / norm ** 2 * d_norm
    return -inner / norm, -gradient


def _maximize_block(a: np.ndarray, nu: np.ndarray, p: float, restarts: int,
                    rng: np.random.Generator) -> Tuple[float, np.ndarray]:
    best_value, best_u = 0.0, np.zeros_like(a)
    if not np.any(a):
        return best_value, best_u
    for _ in range(restarts):
        start = rng.standard_normal(a.shape[0])
        start /= np.linalg.norm(start) or 1.0
        result = optimize.minimize(
            _ratio_and_gradient, start, args=(a, nu, p), jac=True, method="BFGS",
            options={"gtol": 1e-12, "maxiter": 2000},
        )
        # R нечётна: R(-u) = -R(u)
        value = -float(result.fun)
        u = np.asarray(result.x, dtype=float)
        if value < 0:
            value, u = -value, -u
        if value > best_value:
            best_value, best_u = value, u
    norm = float(np.sum(nu * np.abs(best_u) ** p)) ** (1.0 / p)
    return best_value, (best_u / norm if norm else best_u)


def probe_instance(T: CondExp, f: Vector, p: RealExponent, restarts: int,
                   rng: np.random.Generator) -> InstanceProbe:
    """
    Численная двойственная норма g ↦ T(fg) на L^p(T) против ‖f‖_{T,q}

    Returns:
        InstanceProbe с поблочными значениями и лучшим g
    """
    p = float(p)
    q = conjugate(p)
    # при p = 2 точная сторона - сама двойственная норма ядра, в квадратах
    squared = dual_norm(l2_representation(T, f), 2) if p == 2.0 else None
    weights = np.array([float(w) for w in T.space.weights])
    values = np.array([float(v) for v in f.values])
    blocks = []
    for index, (block, mass) in enumerate(zip(T.blocks, T.block_masses)):
        idx = list(block.indices)
        nu = weights[idx] / float(mass)
        a = nu * values[idx]
        numeric, attainer = _maximize_block(a, nu, p, restarts, rng)
        if squared is None:
            exact = float(np.sum(nu * np.abs(values[idx]) ** q)) ** (1.0 / q)
        else:
            exact = float(np.sqrt(float(T.block_value(squared, index))))
        blocks.append(BlockProbe(index, numeric, exact, tuple(float(x) for x in attainer)))
    return InstanceProbe(tuple(float(v) for v in values), tuple(blocks))


def conjecture_probe(T: CondExp, p: RealExponent, trials: Optional[int] = None,
                     tol: Optional[float] = None, restarts: Optional[int] = None,
                     seed: Optional[int] = None,
                     vectors: Optional[List[Vector]] = None) -> ProbeResult:
    """
    Прогнать probe_instance на trials случайных f (или на данных vectors)

    Raises:
        InvalidExponent: p ≤ 1
    """
    if float(p) <= 1.0:
        raise InvalidExponent(f"conjecture probe needs p > 1, got {p}")
    trials = settings.CONJECTURE_INSTANCES if trials is None else trials
    tol = settings.CONJECTURE_GAP if tol is None else tol
    restarts = settings.CONJECTURE_RESTARTS if restarts is None else restarts
    seed = settings.LAB_SEED if seed is None else seed

    rng = np.random.default_rng(seed)
    if vectors is None:
        factory = InstanceFactory(seed)
        vectors = [factory.vector(T.space) for _ in range(trials)]
    instances = tuple(probe_instance(T, f, p, restarts, rng) for f in vectors)
    result = ProbeResult(float(p), conjugate(float(p)), restarts, tol, instances)
    logger.info("conjecture probe p=%s: %d instances, max gap %.3e, share %.3f",
                p, len(instances), result.max_gap, result.pass_share)
    return result


def conjecture_sweep(p: RealExponent, instances: Optional[int] = None,
                     tol: Optional[float] = None, restarts: Optional[int] = None,
                     seed: Optional[int] = None,
                     max_omega: Optional[int] = None) -> ProbeResult:
    """
    probe_instance на instances случайных парах (T, f)

    Экземпляр k строится из InstanceFactory(seed + k), старты BFGS берутся
    из default_rng(seed + k).
    """
    if float(p) <= 1.0:
        raise InvalidExponent(f"conjecture probe needs p > 1, got {p}")
    instances = settings.CONJECTURE_INSTANCES if instances is None else instances
    tol = settings.CONJECTURE_GAP if tol is None else tol
    restarts = settings.CONJECTURE_RESTARTS if restarts is None else restarts
    seed = settings.LAB_SEED if seed is None else seed

    probes = []
    for k in range(1, instances + 1):
        factory = InstanceFactory(seed + k)
        T = factory.cond_exp(max_omega=max_omega)
        f = factory.vector(T.space)
        probes.append(probe_instance(T, f, p, restarts, np.random.default_rng(seed + k)))
    result = ProbeResult(float(p), conjugate(float(p)), restarts, tol, tuple(probes))
    logger.info(f"🔬 p={p}: {instances} random instances, max gap {result.max_gap:.3e}, "
                f"share {result.pass_share:.3f}")
    return result
