"""
Файлы пространств: построчный текстовый формат

    # комментарий
    omega_size: 3
    weights: 1 1 2
    partition: 1 2 | 3
    degenerate: false
    charge mixed: 0 0 1 ; 0 0 0 ; 0 0 1

Скаляры - только рациональные строки "a" или "a/b", float запрещены.
"""
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from core.charges import Charge
from core.cond_exp import CondExp, DegenerateCondExp, Partition, make_cond_exp, null_ideal_reduction
from core.errors import SpecParseError, SpecValidationError
from core.lattice import FiniteSpace, Vector

logger = logging.getLogger(__name__)

RATIONAL = re.compile(r"^-?\d+(/0*[1-9]\d*)?$")
KNOWN_KEYS = ("omega_size", "weights", "partition", "degenerate")


# ==================== PYDANTIC SCHEMAS ====================

class SpaceSpec(BaseModel):
    """Конечная модель: Ω, веса, разбиение и именованные заряды"""
    omega_size: int = Field(..., ge=1, description="Число точек n")
    weights: List[str] = Field(..., description="Веса атомов, рациональные строки")
    partition: List[List[int]] = Field(..., description="Блоки, точки с 1")
    degenerate: bool = Field(False, description="Разрешить нулевые веса")
    charges: Dict[str, List[List[str]]] = Field(
        default_factory=dict, description="Имя → строки атомных значений"
    )

    @model_validator(mode="after")
    def check_consistency(self) -> "SpaceSpec":
        n = self.omega_size
        if len(self.weights) != n:
            raise ValueError(f"weights: expected {n} values, got {len(self.weights)}")
        for index, raw in enumerate(self.weights, start=1):
            if not RATIONAL.match(raw):
                raise ValueError(f"weights: '{raw}' is not a rational string")
            weight = Fraction(raw)
            if weight < 0 or (weight == 0 and not self.degenerate):
                raise ValueError(f"weights: weight of point {index} must be positive, got {raw}")
        if all(Fraction(w) == 0 for w in self.weights):
            raise ValueError("weights: all weights are zero, the carrier is empty")
        seen = set()
        for block in self.partition:
            if not block:
                raise ValueError("partition: empty block")
            for point in block:
                if not 1 <= point <= n:
                    raise ValueError(f"partition: point {point} is outside 1..{n}")
                if point in seen:
                    raise ValueError(f"partition: point {point} belongs to two blocks")
                seen.add(point)
        if len(seen) != n:
            missing = sorted(set(range(1, n + 1)) - seen)
            raise ValueError(f"partition: points {missing} are not covered")
        for name, rows in self.charges.items():
            if len(rows) != n:
                raise ValueError(f"charge {name}: expected {n} rows, got {len(rows)}")
            for row in rows:
                if len(row) != n or not all(RATIONAL.match(x) for x in row):
                    raise ValueError(f"charge {name}: each row needs {n} rational strings")
                for block in self.partition:
                    if len({Fraction(row[p - 1]) for p in block}) != 1:
                        raise ValueError(f"charge {name}: row {row} is not block-constant")
        if self.charges and any(Fraction(w) == 0 for w in self.weights):
            raise ValueError("charges: not supported when some weight is zero")
        return self

    def space(self) -> FiniteSpace:
        return FiniteSpace(tuple(Fraction(w) for w in self.weights), allow_null=self.degenerate)

    def cond_exp(self) -> CondExp:
        """T; при нулевых весах - строго положительный T на носителе"""
        space = self.space()
        partition = Partition.of(space, self.partition)
        if space.is_strictly_positive:
            return make_cond_exp(space, partition)
        return null_ideal_reduction(DegenerateCondExp(space, partition)).reduced

    def charge(self, name: str) -> Charge:
        if name not in self.charges:
            raise SpecValidationError(f"no charge named '{name}'", field="charges")
        return Charge.from_rows(self.cond_exp(), self.charges[name])


# ==================== PARSING ====================

def _rationals(tokens: List[str], line: int, key: str) -> List[str]:
    for token in tokens:
        if not RATIONAL.match(token):
            raise SpecParseError(f"'{token}' is not a rational 'a' or 'a/b'", line, key)
    return tokens


def parse_spec_text(text: str) -> SpaceSpec:
    """
    Разобрать текст файла пространства

    Raises:
        SpecParseError: синтаксис (номер строки и поле)
        SpecValidationError: данные разобраны, но противоречивы
    """
    raw: Dict[str, Union[int, bool, List]] = {}
    charges: Dict[str, List[List[str]]] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if ":" not in content:
            raise SpecParseError("expected 'key: value'", number)
        key, value = (part.strip() for part in content.split(":", 1))

        if key.startswith("charge "):
            name = key[len("charge "):].strip()
            if not name or name in charges:
                raise SpecParseError(f"charge name '{name}' is empty or repeated", number, key)
            rows = [row.split() for row in value.split(";")]
            charges[name] = [_rationals(row, number, key) for row in rows]
            continue
        if key not in KNOWN_KEYS:
            raise SpecParseError(f"unknown field '{key}'", number, key)
        if key in raw:
            raise SpecParseError(f"field '{key}' repeated", number, key)

        if key == "omega_size":
            if not value.isdigit():
                raise SpecParseError(f"'{value}' is not a positive integer", number, key)
            raw[key] = int(value)
        elif key == "weights":
            raw[key] = _rationals(value.split(), number, key)
        elif key == "partition":
            blocks = []
            for block in value.split("|"):
                tokens = block.split()
                if not all(token.isdigit() for token in tokens):
                    raise SpecParseError(f"block '{block.strip()}' must list point numbers",
                                         number, key)
                blocks.append([int(token) for token in tokens])
            raw[key] = blocks
        elif key == "degenerate":
            if value.lower() not in ("true", "false"):
                raise SpecParseError(f"'{value}' is not true/false", number, key)
            raw[key] = value.lower() == "true"

    try:
        return SpaceSpec(**raw, charges=charges)
    except ValidationError as exc:
        error = exc.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or None
        message = error["msg"].removeprefix("Value error, ")
        raise SpecValidationError(message, field=field) from exc


def parse_spec(path: Union[str, Path]) -> SpaceSpec:
    path = Path(path)
    logger.info(f"📄 Reading space file {path}")
    return parse_spec_text(path.read_text(encoding="utf-8"))


def reference_spec() -> SpaceSpec:
    """Эталонный экземпляр: n = 3, μ = (1, 1, 2), блоки {1,2} | {3}"""
    return SpaceSpec(omega_size=3, weights=["1", "1", "2"], partition=[[1, 2], [3]])


def load_spec(path: Optional[Union[str, Path]]) -> SpaceSpec:
    return reference_spec() if path is None else parse_spec(path)


def parse_vector(space: FiniteSpace, text: str) -> Vector:
    """Вектор из строки "1/3 2/3 1" на пространстве space"""
    tokens = text.replace(",", " ").split()
    bad = [token for token in tokens if not RATIONAL.match(token)]
    if bad:
        raise SpecValidationError(f"'{bad[0]}' is not a rational 'a' or 'a/b'", field="vector")
    if len(tokens) != space.size:
        raise SpecValidationError(f"expected {space.size} values, got {len(tokens)}", field="vector")
    return space.vector([Fraction(token) for token in tokens])
