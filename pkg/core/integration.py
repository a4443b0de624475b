"""
Интеграл по зарядам: ступенчатые функции с R(T)-коэффициентами,
элементарный интеграл I_μ, общий интеграл на L^∞(T), аппроксимация
"сомбреро" и гомоморфизм Рисса μ ↦ J_μ.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from core.charges import Charge, charge_lattice, charge_norm
from core.cond_exp import CondExp, RTVector, norm_Tinf
from core.config import settings
from core.errors import IncompatibleSpaces, NotAbsolutelyContinuous, NotPositive
from core.lattice import (
    ONE, Component, Vector, freudenthal_sequence, partial_inverse, supremum, unit_projection,
)
from core.oracles import grid, modulus_oracle, operator_sup_oracle

logger = logging.getLogger(__name__)

Term = Tuple[Vector, Component]


# ---------------------------------------------------------------------------
# Ступенчатые функции
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StepFunction:
    """x = Σ αᵢ·pᵢ: αᵢ ∈ R(T), pᵢ - попарно дизъюнктные компоненты e"""
    cond_exp: CondExp
    terms: Tuple[Term, ...]

    def __post_init__(self):
        terms = tuple((alpha, p) for alpha, p in self.terms)
        object.__setattr__(self, "terms", terms)
        seen = 0
        for alpha, p in terms:
            self.cond_exp.space.require_same(p.space)
            self.cond_exp.require_range(alpha, "step coefficient")
            if p.mask & seen:
                raise IncompatibleSpaces(f"step components overlap at {p}", witness=p)
            seen |= p.mask

    @classmethod
    def of(cls, T: CondExp, *terms: Term) -> "StepFunction":
        return cls(T, tuple(terms))

    @classmethod
    def from_vector(cls, T: CondExp, f: Vector) -> "StepFunction":
        """Любой f на конечной модели - ступенчатая функция Σ f(ω)·e·1_ω"""
        space = T.space
        return cls(T, tuple((space.unit * f.at(point), space.atom(point)) for point in space.points))

    @property
    def covered(self) -> Component:
        mask = 0
        for _, p in self.terms:
            mask |= p.mask
        return Component(self.cond_exp.space, mask)

    def is_standard(self) -> bool:
        return self.covered == self.cond_exp.space.full

    def realize(self) -> Vector:
        """Σ αᵢ·pᵢ как вектор E"""
        result = self.cond_exp.space.zero
        for alpha, p in self.terms:
            result = result + alpha * p.vector
        return result

    def __str__(self) -> str:
        return " + ".join(f"{alpha}·{p}" for alpha, p in self.terms) or "0"


class StandardRep(StepFunction):
    """Ступенчатая функция, компоненты которой в сумме дают e"""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_standard():
            raise IncompatibleSpaces(
                f"components cover {self.covered}, not the whole of e", witness=self.covered
            )


def to_standard(x: StepFunction) -> StandardRep:
    """Дописать (0, e - Σpᵢ), если компоненты не исчерпывают e"""
    rest = x.covered.complement()
    terms = x.terms if rest.is_empty() else x.terms + ((x.cond_exp.space.zero, rest),)
    return StandardRep(x.cond_exp, terms)


class StepOps(NamedTuple):
    sum: StandardRep
    scale: StandardRep
    abs: StandardRep


def step_ops(x: StepFunction, y: StepFunction, gamma: RTVector) -> StepOps:
    """
    Операции подмодуля ступенчатых функций через общее измельчение:
    x + y = ΣΣ (αᵢ + βⱼ)(pᵢ ∧ qⱼ), γx = Σ γαᵢ pᵢ, |x| = Σ |αᵢ| pᵢ
    """
    if x.cond_exp != y.cond_exp:
        raise IncompatibleSpaces("step functions belong to different operators T")
    T = x.cond_exp
    T.require_range(gamma, "gamma")
    xs, ys = to_standard(x), to_standard(y)
    refined = []
    for alpha, p in xs.terms:
        for beta, q in ys.terms:
            meet = p.meet(q)
            if not meet.is_empty():
                refined.append((alpha + beta, meet))
    return StepOps(
        sum=StandardRep(T, tuple(refined)),
        scale=StandardRep(T, tuple((gamma * alpha, p) for alpha, p in xs.terms)),
        abs=StandardRep(T, tuple((alpha.abs(), p) for alpha, p in xs.terms)),
    )


# ---------------------------------------------------------------------------
# Элементарный интеграл
# ---------------------------------------------------------------------------

def _same_operator(mu: Charge, x: StepFunction) -> None:
    if mu.cond_exp != x.cond_exp:
        raise IncompatibleSpaces("charge and step function belong to different operators T")


def require_abs_continuous(mu: Charge) -> Charge:
    verdict = mu.abs_continuity
    if not verdict:
        raise NotAbsolutelyContinuous(
            f"charge is not T-absolutely continuous at {verdict.witness}", witness=verdict.witness
        )
    return mu


def representation_sum(mu: Charge, x: StepFunction) -> RTVector:
    """Σ αᵢ·μ(pᵢ) для данного представления (без проверки μ ≪ T)"""
    _same_operator(mu, x)
    return sum((alpha * mu(p) for alpha, p in x.terms), mu.space.zero)


def elementary_integral(mu: Charge, x: StepFunction) -> RTVector:
    """I_μ(x); определён только при μ ≪ T"""
    require_abs_continuous(mu)
    return representation_sum(mu, x)


def _random_range_vector(T: CondExp, rng: np.random.Generator) -> RTVector:
    return T.range_vector([
        Fraction(int(rng.integers(-9, 10)), int(rng.choice([1, 2, 3, 4])))
        for _ in T.blocks
    ])


def _split_term(term: Term, rng: np.random.Generator) -> List[Term]:
    alpha, p = term
    points = list(p.points)
    if len(points) < 2:
        return [term]
    chosen = [point for point in points if rng.integers(0, 2)]
    if not chosen or len(chosen) == len(points):
        chosen = points[:1]
    part = Component.from_points(p.space, chosen)
    return [(alpha, part), (alpha, p.difference(part))]


def _mask_term(T: CondExp, term: Term, beta: RTVector) -> Term:
    """α ↦ P_{Tp}(e)·α + (e - P_{Tp}(e))·β: реализация αp не меняется"""
    alpha, p = term
    mask = unit_projection(T(p.vector))
    return (mask * alpha + (T.space.unit - mask) * beta, p)


def alternate_representations(x: StepFunction, trials: int,
                              seed: Optional[int] = None) -> List[StandardRep]:
    """
    Другие стандартные представления той же ступенчатой функции

    Первыми идут чистые маскировки (β = 0) каждого слагаемого, затем
    trials случайных: дробление компонент и маскировка со случайным β.
    """
    T = x.cond_exp
    base = to_standard(x)
    rng = np.random.default_rng(settings.LAB_SEED if seed is None else seed)
    result = []
    for index in range(len(base.terms)):
        terms = list(base.terms)
        terms[index] = _mask_term(T, terms[index], T.space.zero)
        result.append(StandardRep(T, tuple(terms)))
    for _ in range(trials):
        terms = []
        for term in base.terms:
            for piece in _split_term(term, rng) if rng.integers(0, 2) else [term]:
                if rng.integers(0, 2):
                    piece = _mask_term(T, piece, _random_range_vector(T, rng))
                terms.append(piece)
        result.append(StandardRep(T, tuple(terms)))
    return result


@dataclass(frozen=True)
class WellDefinednessReport:
    """Значения Σ αᵢμ(pᵢ) на разных представлениях одной функции"""
    realization: Vector
    values: Tuple[Tuple[StandardRep, RTVector], ...]
    witness: Optional[Tuple[StandardRep, RTVector, StandardRep, RTVector]]

    @property
    def agree(self) -> bool:
        return self.witness is None


def well_definedness_witness(mu: Charge, x: StepFunction,
                             trials: Optional[int] = None,
                             seed: Optional[int] = None) -> WellDefinednessReport:
    """Сравнить суммы по представлениям; для μ ≪ T они обязаны совпасть"""
    trials = settings.WELL_DEFINEDNESS_TRIALS if trials is None else trials
    base = to_standard(x)
    reps = [base] + alternate_representations(x, trials, seed)
    realization = base.realize()
    values = []
    witness = None
    base_value = representation_sum(mu, base)
    for rep in reps:
        if rep.realize() != realization:
            raise AssertionError(f"alternate representation {rep} changed the realization")
        value = representation_sum(mu, rep)
        values.append((rep, value))
        if witness is None and value != base_value:
            witness = (base, base_value, rep, value)
    if witness:
        logger.debug("representation dependence: %s vs %s", witness[1], witness[3])
    return WellDefinednessReport(realization, tuple(values), witness)


# ---------------------------------------------------------------------------
# Общий интеграл
# ---------------------------------------------------------------------------

def _positive_integral(mu: Charge, f: Vector) -> RTVector:
    """
    ∫ f dμ для μ ≥ 0, f ≥ 0: супремум I_μ(g) по 0 ≤ g ≤ f достигается в g = f,
    т.е. в Σ f(ω)·μ(1_ω)
    """
    return sum((mu.atom(point) * f.at(point) for point in f.support.points), mu.space.zero)


def integral(mu: Charge, f: Vector) -> RTVector:
    """
    ∫ f dμ = ∫f⁺dμ⁺ - ∫f⁻dμ⁺ - ∫f⁺dμ⁻ + ∫f⁻dμ⁻

    Raises:
        NotAbsolutelyContinuous: μ не ≪ T
    """
    require_abs_continuous(mu)
    mu.space.require_same(f.space)
    parts = mu.lattice
    fp, fn = f.pos(), f.neg()
    return (
        _positive_integral(parts.pos, fp) - _positive_integral(parts.pos, fn)
        - _positive_integral(parts.neg, fp) + _positive_integral(parts.neg, fn)
    )


def integral_two_term(mu: Charge, f: Vector) -> RTVector:
    """∫ f dμ⁺ - ∫ f dμ⁻ со знаковым f внутри каждого слагаемого"""
    require_abs_continuous(mu)
    parts = mu.lattice
    T = mu.cond_exp
    x = StepFunction.from_vector(T, f)
    return representation_sum(parts.pos, x) - representation_sum(parts.neg, x)


def integral_sup_oracle(mu: Charge, f: Vector, levels: Optional[int] = None) -> RTVector:
    """sup{I_μ(g) : g ступенчатая, 0 ≤ g ≤ f} по сетке уровней f(ω)·k/K"""
    if not (mu.is_positive() and f.is_positive()):
        raise NotPositive("sup over dominated step functions needs μ ≥ 0 and f ≥ 0")
    require_abs_continuous(mu)
    levels = settings.SUP_GRID_LEVELS if levels is None else levels
    T = mu.cond_exp
    return supremum(
        representation_sum(mu, StepFunction.from_vector(T, g)) for g in grid(f, levels)
    )


def integral_bound_check(mu: Charge, f: Vector) -> bool:
    """|∫ f dμ| ≤ |μ|(e)·‖f‖_{T,∞}"""
    return integral(mu, f).abs() <= charge_norm(mu) * norm_Tinf(mu.cond_exp, f)


# ---------------------------------------------------------------------------
# Сомбреро
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SombreroStage:
    level: int
    step: StepFunction
    approximation_gap: Vector
    approximation_bound: RTVector
    integral_gap: RTVector
    integral_bound: RTVector

    @property
    def holds(self) -> bool:
        return (self.approximation_gap <= self.approximation_bound
                and self.integral_gap <= self.integral_bound)


@dataclass(frozen=True)
class SombreroReport:
    alpha: RTVector
    integral: RTVector
    stages: Tuple[SombreroStage, ...]
    monotone: bool

    @property
    def passed(self) -> bool:
        return self.monotone and all(stage.holds for stage in self.stages)


def sombrero_sequence(T: CondExp, f: Vector, steps: int) -> Tuple[RTVector, List[StepFunction]]:
    """s_n = α·t_n, α = ‖f‖_{T,∞}, t_n - диадическая аппроксимация α⁻¹f ≤ e"""
    alpha = norm_Tinf(T, f)
    normalized = partial_inverse(alpha) * f
    stages = freudenthal_sequence(normalized, T.space.unit, steps, scale=ONE)
    result = []
    for realized in stages:
        result.append(StepFunction(T, tuple(
            (alpha * coefficient, component) for coefficient, component in realized.coefficients
        )))
    return alpha, result


def sombrero_check(mu: Charge, f: Vector, steps: Optional[int] = None) -> SombreroReport:
    """
    Проверить f - s_n ≤ 2⁻ⁿ·α и |∫f dμ - I_μ(s_n)| ≤ 2⁻ⁿ·α·μ(e) для n ≤ steps

    Raises:
        NotPositive: μ или f не положительны
        NotAbsolutelyContinuous: μ не ≪ T
    """
    steps = settings.SOMBRERO_STEPS if steps is None else steps
    if not mu.is_positive():
        raise NotPositive("sombrero approximation needs μ ≥ 0")
    if not f.is_positive():
        raise NotPositive(f"sombrero approximation needs f ≥ 0, got {f}")
    require_abs_continuous(mu)
    T = mu.cond_exp
    alpha, sequence = sombrero_sequence(T, f, steps)
    total = integral(mu, f)
    stages = []
    for level, step in enumerate(sequence, start=1):
        scale = Fraction(1, 2 ** level)
        realized = step.realize()
        stages.append(SombreroStage(
            level=level,
            step=step,
            approximation_gap=f - realized,
            approximation_bound=alpha * scale,
            integral_gap=(total - elementary_integral(mu, step)).abs(),
            integral_bound=alpha * mu.total * scale,
        ))
    realizations = [step.realize() for step in sequence]
    monotone = all(a <= b for a, b in zip(realizations, realizations[1:]))
    monotone = monotone and all(s <= f and s.is_positive() for s in realizations)
    return SombreroReport(alpha, total, tuple(stages), monotone)


# ---------------------------------------------------------------------------
# J_μ как гомоморфизм Рисса
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomomorphismCheck:
    name: str
    argument: Vector
    expected: RTVector
    actual: RTVector

    @property
    def holds(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class JHomReport:
    checks: Tuple[HomomorphismCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    @property
    def failures(self) -> List[HomomorphismCheck]:
        return [check for check in self.checks if not check.holds]


def J(mu: Charge):
    """J_μ: f ↦ ∫ f dμ"""
    require_abs_continuous(mu)
    return lambda f: integral(mu, f)


def J_hom_check(mu: Charge, nu: Charge, test_vectors: Sequence[Vector] = ()) -> JHomReport:
    """
    |J_μ| = J_{|μ|} (перебор знаковых векторов) на положительных f и
    J_{μ∨ν} = J_μ ∨ J_ν на компонентах (перебор вершин {0,1}^n)
    """
    require_abs_continuous(mu)
    require_abs_continuous(nu)
    space = mu.space
    lattice = charge_lattice(mu, nu)
    j_mu, j_nu = J(mu), J(nu)
    arguments: List[Vector] = [atom.vector for atom in space.atoms()] + [space.unit]
    arguments += [f.abs() for f in test_vectors]

    checks = []
    for f in arguments:
        checks.append(HomomorphismCheck(
            "modulus", f, integral(lattice.abs, f), modulus_oracle(j_mu, f)
        ))
    for p in space.components():
        checks.append(HomomorphismCheck(
            "sup", p.vector, integral(lattice.sup, p.vector),
            operator_sup_oracle(j_mu, j_nu, p.vector),
        ))
    return JHomReport(tuple(checks))


def integrals_of_components(mu: Charge) -> Iterable[Tuple[Component, RTVector, RTVector]]:
    """(p, ∫ p dμ, μ(p)) по всем компонентам"""
    for p in mu.space.components():
        yield p, integral(mu, p.vector), mu(p)
