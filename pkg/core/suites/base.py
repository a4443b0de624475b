"""
Базовый класс набора проверок
"""
import logging
from abc import ABC, abstractmethod
from typing import Callable, Iterator, NamedTuple, Optional

from core.cond_exp import CondExp
from core.errors import LabError
from core.instances import InstanceFactory
from core.reports import CheckStatus
from core.spec_file import SpaceSpec

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    check: str
    status: CheckStatus
    witness: Optional[str] = None


def outcome(check: str, ok: bool, witness: Optional[object] = None) -> Outcome:
    """PASS/FAIL; свидетель пишется только при провале"""
    if ok:
        return Outcome(check, CheckStatus.PASS)
    return Outcome(check, CheckStatus.FAIL, None if witness is None else str(witness))


def guarded(check: str, body: Callable[[], Outcome]) -> Outcome:
    """Исключение домена внутри проверки - это провал проверки, а не прогона"""
    try:
        return body()
    except LabError as exc:
        logger.warning(f"⚠️ {check}: {type(exc).__name__}: {exc}")
        return Outcome(check, CheckStatus.FAIL, f"{type(exc).__name__}: {exc}")


class Suite(ABC):
    """Набор инвариантов одного модуля"""

    name: str = "abstract"

    @abstractmethod
    def check_instance(self, T: CondExp, factory: InstanceFactory) -> Iterator[Outcome]:
        """
        Проверки на одном операторе T

        Args:
            T: Условное ожидание (эталонное или случайное)
            factory: Источник случайных векторов и зарядов для этого T

        Returns:
            Итератор результатов
        """
        pass

    def check_spec(self, spec: SpaceSpec, factory: InstanceFactory) -> Iterator[Outcome]:
        """Проверки эталонного экземпляра: по умолчанию те же, что на случайных"""
        yield from self.check_instance(spec.cond_exp(), factory)
