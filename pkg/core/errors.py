"""
Исключения лаборатории
"""
from typing import Any, Optional


class LabError(Exception):
    """Базовое исключение: все ошибки домена наследуются отсюда"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class IncompatibleSpaces(LabError, ValueError):
    """Операнды живут на разных конечных пространствах"""


class NonRationalRoot(LabError, ValueError):
    """Точный корень не рационален (например, √2)"""


class NegativeBase(LabError, ValueError):
    """Дробная степень отрицательного числа"""


class InvalidExponent(LabError, ValueError):
    """Недопустимый показатель p"""


class InvalidPartition(LabError, ValueError):
    """Блоки пересекаются, пусты или не покрывают Ω"""


class NonPositiveWeight(LabError, ValueError):
    """Вес атома не строго положителен"""


class NotDominated(LabError, ValueError):
    """f не мажорируется никаким кратным u"""


class NotAdditive(LabError, ValueError):
    """Таблица не аддитивна; witness = пара дизъюнктных компонент"""


class MissingComponent(LabError, ValueError):
    """В таблице заряда нет значения на какой-то компоненте"""


class TooLarge(LabError):
    """Перебор превышает настроенную границу"""


class InvalidUnit(LabError, ValueError):
    """Вектор не является слабой порядковой единицей с T(e2) = e2"""


class NotAbsolutelyContinuous(LabError):
    """Заряд не T-абсолютно непрерывен; witness = компонента p"""


class NotHomogeneous(LabError):
    """Функционал не R(T)-однороден; witness = (g, f)"""


class NotBounded(LabError):
    """Функционал не ограничен по ‖·‖_{T,p}"""


class Unsupported(LabError):
    """Комбинация вида функционала и показателя не поддерживается"""


class SpecParseError(LabError):
    """Синтаксическая ошибка в файле пространства"""

    def __init__(self, message: str, line: int, field: Optional[str] = None):
        location = f"line {line}" + (f", field '{field}'" if field else "")
        super().__init__(f"{location}: {message}")
        self.line = line
        self.field = field


class SpecValidationError(LabError, ValueError):
    """Файл разобран, но данные не проходят проверку"""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class NotPositive(LabError, ValueError):
    """Ожидался положительный вектор или заряд"""


class UnknownTopic(LabError, ValueError):
    """Нет демонстрации с таким названием"""
