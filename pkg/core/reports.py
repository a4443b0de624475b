"""
Отчёты прогонов: pydantic-схемы и запись в файл
"""
import logging
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    # демонстрация контрпримера: нарушение ожидается
    EXPECTED_FAIL = "expected_fail"


class CheckResult(BaseModel):
    """Одна проверка на одном экземпляре"""
    suite: str
    check: str
    instance: str = Field(..., description="reference или case-NNNN")
    status: CheckStatus
    witness: Optional[str] = None


class RunReport(BaseModel):
    """Результат прогона набора проверок"""
    suite: str
    spec: str
    seed: int
    cases: int
    checks: List[CheckResult] = Field(default_factory=list)
    timing_seconds: Optional[float] = None

    def sorted(self) -> "RunReport":
        """Проверки в каноническом порядке (suite, check, instance)"""
        checks = sorted(self.checks, key=lambda c: (c.suite, c.check, c.instance))
        return self.model_copy(update={"checks": checks})

    @property
    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for check in self.checks:
            counts[check.status.value] += 1
        return counts

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if check.status == CheckStatus.FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return self.sorted().model_dump_json(indent=2, exclude_none=True)

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")
        logger.info(f"💾 Report written to {path}")


class ExponentProbe(BaseModel):
    """Итог эксперимента для одного p"""
    p: str
    q: float
    instances: int
    restarts: int
    tol: float
    max_gap: float
    pass_share: float
    required_share: float
    worst_f: List[float] = Field(default_factory=list)
    worst_attainer: List[float] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.pass_share >= self.required_share


class ProbeReport(BaseModel):
    """Эксперимент с гипотезой: свидетельство, а не доказательство"""
    seed: int
    evidence_grade: str = "float"
    exponents: List[ExponentProbe] = Field(default_factory=list)
    cross_check: Optional[ExponentProbe] = None

    @property
    def passed(self) -> bool:
        checks = self.exponents + ([self.cross_check] if self.cross_check else [])
        return all(probe.passed for probe in checks)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")
        logger.info(f"💾 Probe report written to {path}")
