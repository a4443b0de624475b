"""
Наборы инвариантов и их прогон на эталонном и случайных экземплярах
"""
import logging
import time
from typing import Dict, List, Optional

from core.config import settings
from core.instances import InstanceFactory
from core.reports import CheckResult, RunReport
from core.spec_file import SpaceSpec
from core.suites.base import Outcome, Suite
from core.suites.charges import ChargesSuite
from core.suites.duality import DualitySuite
from core.suites.integration import IntegrationSuite
from core.suites.lattice import LatticeSuite

logger = logging.getLogger(__name__)

SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (LatticeSuite(), ChargesSuite(), IntegrationSuite(), DualitySuite())
}
ALL = "all"


def case_label(case: int) -> str:
    return f"case-{case:04d}"


def _results(suite: Suite, instance: str, outcomes) -> List[CheckResult]:
    results = []
    for item in outcomes:
        results.append(CheckResult(
            suite=suite.name, check=item.check, instance=instance,
            status=item.status, witness=item.witness,
        ))
    return results


def run_suite(spec: SpaceSpec, suite: str = ALL, seed: Optional[int] = None,
              cases: Optional[int] = None, max_omega: Optional[int] = None,
              spec_label: str = "reference") -> RunReport:
    """
    Прогнать набор(ы) на эталонном экземпляре spec и на cases случайных

    Случай k строится из InstanceFactory(seed + k) заново для каждого набора,
    поэтому отчёт не зависит от того, какие наборы выбраны.

    Args:
        spec: Эталонное пространство
        suite: Имя набора или "all"
        seed: Seed генератора (по умолчанию LAB_SEED)
        cases: Число случайных экземпляров (по умолчанию LAB_CASES)
        max_omega: Наибольшее n случайного экземпляра

    Returns:
        RunReport; провалы - часть отчёта, исключений нет
    """
    seed = settings.LAB_SEED if seed is None else seed
    cases = settings.LAB_CASES if cases is None else cases
    selected = list(SUITES.values()) if suite == ALL else [SUITES[suite]]
    started = time.perf_counter()

    checks: List[CheckResult] = []
    for current in selected:
        logger.info(f"🧪 Suite {current.name}: reference + {cases} cases, seed {seed}")
        checks += _results(current, "reference", current.check_spec(spec, InstanceFactory(seed)))
        for case in range(1, cases + 1):
            factory = InstanceFactory(seed + case)
            T = factory.cond_exp(max_omega=max_omega)
            checks += _results(current, case_label(case), current.check_instance(T, factory))

    elapsed = time.perf_counter() - started
    report = RunReport(
        suite=suite, spec=spec_label, seed=seed, cases=cases, checks=checks,
        timing_seconds=round(elapsed, 3) if settings.REPORT_TIMING else None,
    )
    counts = report.counts
    logger.info(f"✅ {counts['pass']} passed, ❌ {counts['fail']} failed, "
                f"⚠️ {counts['expected_fail']} expected failures in {elapsed:.1f}s")
    return report.sorted()


__all__ = ["SUITES", "ALL", "Suite", "Outcome", "run_suite", "case_label"]
