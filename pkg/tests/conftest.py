"""
Общие фикстуры: эталонный экземпляр n = 3, μ = (1, 1, 2), блоки {1,2} | {3}
"""
import pytest

from core.charges import Charge
from core.cond_exp import CondExp, Partition, make_cond_exp
from core.lattice import FiniteSpace


@pytest.fixture
def space() -> FiniteSpace:
    return FiniteSpace.of(1, 1, 2)


@pytest.fixture
def T(space) -> CondExp:
    return make_cond_exp(space, Partition.of(space, [[1, 2], [3]]))


@pytest.fixture
def mixed_charge(T) -> Charge:
    """μ(1_1) сосредоточено на чужом блоке {3}: не ≪ T"""
    return Charge.from_rows(T, [[0, 0, 1], [0, 0, 0], [0, 0, 1]])


@pytest.fixture
def signed_charge(T) -> Charge:
    """≪ T, знакопеременный"""
    return Charge.from_rows(T, [[1, 1, 0], [-2, -2, 0], [0, 0, 1]])
