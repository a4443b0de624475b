"""
Конфигурация лаборатории через pydantic-settings
"""
from fractions import Fraction
from typing import List

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки лаборатории из .env"""

    # Случайные экземпляры
    LAB_SEED: int = 0
    LAB_CASES: int = 100
    MIN_OMEGA: int = 2
    MAX_OMEGA: int = 5  # 2^n компонент должно оставаться перебираемым

    # Ограничения перебора
    VARIATION_MAX_OMEGA: int = 10  # число Белла растёт очень быстро
    ENUMERATION_MAX_OMEGA: int = 16  # полные таблицы зарядов 2^n

    # Интегрирование
    WELL_DEFINEDNESS_TRIALS: int = 20
    SOMBRERO_STEPS: int = 6
    SUP_GRID_LEVELS: int = 2  # (K+1)^n точек сетки

    # Эксперимент с гипотезой (float)
    CONJECTURE_TOL: float = 1e-9
    CONJECTURE_GAP: float = 1e-6
    CONJECTURE_RESTARTS: int = 64
    CONJECTURE_INSTANCES: int = 50
    CONJECTURE_PASS_SHARE: float = 0.95
    # CSV строка показателей, например "3/2,3,5"
    CONJECTURE_EXPONENTS: str = "3/2,3,5"

    # Вывод
    DISPLAY_TOL: float = 1e-12
    REPORT_TIMING: bool = False  # время ломает побайтовую воспроизводимость
    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"
    )

    @property
    def conjecture_exponents(self) -> List[Fraction]:
        """Парсинг CONJECTURE_EXPONENTS в список Fraction"""
        if not self.CONJECTURE_EXPONENTS:
            return []
        raw = self.CONJECTURE_EXPONENTS.replace(";", ",")
        return [Fraction(x.strip()) for x in raw.split(",") if x.strip()]


# Глобальный инстанс настроек
settings = Settings()
