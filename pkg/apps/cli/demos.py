"""
Демонстрации: печать объектов и точных тождеств для одной модели
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from core.charges import (
    Charge, charge_from_measure, charge_norm, is_T_abs_continuous, lebesgue_decomposition,
)
from core.cond_exp import INF, CondExp, norm_Tinf, norm_Tp_pow
from core.config import settings
from core.duality import (
    KernelFunctional, charge_to_linfty, dual_norm, dual_norm_representations, l1_recover,
    l1_representation, l2_recover, l2_representation, linfty_to_charge, probe_instance,
)
from core.errors import UnknownTopic
from core.integration import StepFunction, integral, sombrero_check, well_definedness_witness
from core.lattice import FloatVector, Vector, power
from core.spec_file import SpaceSpec, parse_vector

logger = logging.getLogger(__name__)

SOMBRERO_DEMO_STEPS = 4
HALF = Fraction(1, 2)


class DemoContext:
    """Модель, выбранный заряд и вектор для одной демонстрации"""

    def __init__(self, spec: SpaceSpec, charge: Optional[str] = None,
                 vector: Optional[str] = None):
        self.spec = spec
        self.T: CondExp = spec.cond_exp()
        self.charge_name = charge
        self.vector_text = vector

    def vector(self, default: Optional[List] = None) -> Vector:
        space = self.T.space
        if self.vector_text is not None:
            return parse_vector(space, self.vector_text)
        if default is not None and len(default) == space.size:
            return space.vector(default)
        # 1, 2, ..., n с чередованием знака
        return space.vector([(-1) ** (i + 1) * i for i in space.points])

    def charge(self) -> Optional[Charge]:
        if self.charge_name is not None:
            return self.spec.charge(self.charge_name)
        return None

    def header(self, title: str) -> List[str]:
        return [f"== {title} ==", f"Ω weights {self.T.space}", f"T = {self.T}"]


def _floats(v: FloatVector) -> str:
    return "(" + ", ".join(f"{x:.12g}" for x in v.values) + ")"


def _atom_table(title: str, mu: Charge) -> List[str]:
    lines = [f"{title}:"]
    for point in mu.space.points:
        lines.append(f"  μ(1_{point}) = {mu.atom(point)}")
    return lines


def demo_dual1(ctx: DemoContext) -> List[str]:
    T, f = ctx.T, ctx.vector()
    phi = l1_representation(T, f)
    reps = dual_norm_representations(phi, 1)
    lines = ctx.header("L̂¹(T) ≅ L^∞(T)")
    lines += [
        f"f = {f}",
        "φ(g) = T(f·g); columns φ(1_ω): " + ", ".join(str(c) for c in phi.columns()),
        f"‖φ‖_L̂¹ = {dual_norm(phi, 1)}",
        f"‖f‖_T,∞ = {norm_Tinf(T, f)}",
        f"infimum / unit-ball sup / normalized sup: {reps.infimum} / {reps.unit_ball_sup} / "
        f"{reps.normalized_sup}",
        f"recovered kernel = {l1_recover(phi)}",
    ]
    return lines


def demo_dual2(ctx: DemoContext) -> List[str]:
    T, f = ctx.T, ctx.vector()
    phi = l2_representation(T, f)
    reps = dual_norm_representations(phi, 2)
    lines = ctx.header("L̂²(T) ≅ L²(T), нормы в квадратах")
    lines += [
        f"f = {f}",
        f"‖φ‖²_L̂² = {dual_norm(phi, 2)}",
        f"T(f²) = {norm_Tp_pow(T, f, 2)}",
        f"infimum / unit-ball sup / normalized sup: {reps.infimum} / {reps.unit_ball_sup} / "
        f"{reps.normalized_sup}",
        f"recovered kernel = {l2_recover(phi)}",
    ]
    # корни показываются как float с точностью DISPLAY_TOL
    tol = settings.DISPLAY_TOL
    norm_root = power(dual_norm(phi, 2), HALF, mode="float", tolerance=tol)
    kernel_root = power(norm_Tp_pow(T, f, 2), HALF, mode="float", tolerance=tol)
    lines += [
        f"‖φ‖_L̂² ≈ {_floats(norm_root)}",
        f"‖f‖_T,2 ≈ {_floats(kernel_root)}",
        f"roots agree within {tol:g}: {norm_root.close_to(kernel_root)}",
    ]
    return lines


def demo_dualinf(ctx: DemoContext) -> List[str]:
    T = ctx.T
    chosen = ctx.charge()
    if chosen is None:
        # Ψ(T): сам T как функционал f ↦ T(f)
        phi = KernelFunctional(T, T.space.unit)
        mu = linfty_to_charge(phi)
        title = "μ = Ψ(T)"
    else:
        mu = chosen
        phi = charge_to_linfty(mu)
        title = f"μ = {ctx.charge_name}"
    lines = ctx.header("L̂^∞(T) ≅ ba(T)")
    lines += _atom_table(title, mu)
    for p in T.space.components():
        lines.append(f"  p = {p}: ∫p dμ = {integral(mu, p.vector)}, μ(p) = {mu(p)}, "
                     f"T(p) = {T(p.vector)}")
    lines += [
        f"‖Φ(μ)‖_L̂^∞ = {dual_norm(charge_to_linfty(mu), INF)}",
        f"|μ|(e) = {charge_norm(mu)}",
        f"φ and Φ(Ψ(φ)) agree: {charge_to_linfty(mu).same_action(phi)}",
    ]
    return lines


def demo_lebesgue(ctx: DemoContext) -> List[str]:
    T = ctx.T
    mu = ctx.charge()
    if mu is None:
        names = sorted(ctx.spec.charges)
        mu = ctx.spec.charge(names[0]) if names else charge_from_measure(T)
    parts = lebesgue_decomposition(mu)
    verdict = is_T_abs_continuous(mu)
    lines = ctx.header("Lebesgue decomposition μ = μ_ac + μ_s")
    lines += _atom_table("μ", mu)
    lines += _atom_table("μ_ac", parts.absolutely_continuous)
    lines += _atom_table("μ_s", parts.singular)
    lines.append(f"μ ≪ T: {verdict.holds}" + ("" if verdict else f" (fails at {verdict.witness})"))
    if not verdict:
        x = StepFunction.of(T, (T.space.unit, verdict.witness))
        report = well_definedness_witness(mu, x)
        if not report.agree:
            base, base_value, other, other_value = report.witness
            lines += [
                "representation dependence of Σ αᵢμ(pᵢ):",
                f"  {base} ↦ {base_value}",
                f"  {other} ↦ {other_value}",
            ]
    return lines


def demo_sombrero(ctx: DemoContext) -> List[str]:
    T = ctx.T
    f = ctx.vector(default=["1/3", "2/3", "1"]).abs()
    mu = ctx.charge()
    if mu is None or not is_T_abs_continuous(mu) or not mu.is_positive():
        mu = charge_from_measure(T)
    report = sombrero_check(mu, f, SOMBRERO_DEMO_STEPS)
    lines = ctx.header("Sombrero approximation")
    lines += [f"f = {f}", f"α = ‖f‖_T,∞ = {report.alpha}", f"∫f dμ = {report.integral}"]
    for stage in report.stages:
        lines += [
            f"n = {stage.level}: s_n = {stage.step.realize()}",
            f"  f - s_n = {stage.approximation_gap} ≤ {stage.approximation_bound}",
            f"  |∫f dμ - I_μ(s_n)| = {stage.integral_gap} ≤ {stage.integral_bound}",
        ]
    lines.append(f"all bounds hold: {report.passed}")
    return lines


def demo_conjecture(ctx: DemoContext) -> List[str]:
    T, f = ctx.T, ctx.vector()
    lines = ctx.header("‖g ↦ T(fg)‖_L̂^p against ‖f‖_T,q (float evidence)")
    lines.append(f"f = {f}")
    rng = np.random.default_rng(settings.LAB_SEED)
    for p in [2] + settings.conjecture_exponents:
        probe = probe_instance(T, f, p, settings.CONJECTURE_RESTARTS, rng)
        lines.append(f"p = {p}: numeric {probe.numeric}, exact {probe.exact}, gap {probe.gap:.2e}")
    return lines


DEMOS: Dict[str, Callable[[DemoContext], List[str]]] = {
    "dual1": demo_dual1,
    "dual2": demo_dual2,
    "dualinf": demo_dualinf,
    "lebesgue": demo_lebesgue,
    "sombrero": demo_sombrero,
    "conjecture": demo_conjecture,
}


def run_demo(spec: SpaceSpec, topic: str, charge: Optional[str] = None,
             vector: Optional[str] = None) -> List[str]:
    """
    Строки демонстрации topic

    Raises:
        UnknownTopic: нет такой демонстрации
    """
    if topic not in DEMOS:
        raise UnknownTopic(f"unknown demo topic '{topic}', expected one of {', '.join(DEMOS)}")
    logger.info(f"🎓 Demo {topic}")
    return DEMOS[topic](DemoContext(spec, charge, vector))
