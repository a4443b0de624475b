"""
L̂^∞(T) и ba(T): функционал интегрирования по заряду и обратное сужение
"""
from dataclasses import dataclass

from core.charges import Charge, is_T_abs_continuous
from core.cond_exp import CondExp, INF, RTVector
from core.duality.base import DualFunctional, require_homogeneous
from core.duality.norms import check_bounded
from core.errors import NotAbsolutelyContinuous
from core.integration import integral, require_abs_continuous
from core.lattice import Vector


@dataclass(frozen=True)
class ChargeFunctional(DualFunctional):
    """f ↦ ∫ f dμ для μ ≪ T"""
    charge: Charge

    kind = "charge"

    def __post_init__(self):
        require_abs_continuous(self.charge)

    @property
    def operator(self) -> CondExp:
        return self.charge.cond_exp

    def apply(self, f: Vector) -> RTVector:
        return integral(self.charge, f)


def charge_to_linfty(mu: Charge) -> ChargeFunctional:
    """Φ(μ) = ∫ · dμ"""
    return ChargeFunctional(mu)


def linfty_to_charge(phi: DualFunctional) -> Charge:
    """
    Ψ(φ) = φ|_{C_e}: значения на атомах

    Raises:
        NotHomogeneous: φ не R(T)-однороден
        NotBounded: φ не ограничен по ‖·‖_{T,∞}
    """
    require_homogeneous(phi)
    check_bounded(phi, INF)
    mu = Charge(phi.operator, phi.columns())
    verdict = is_T_abs_continuous(mu)
    if not verdict:
        raise NotAbsolutelyContinuous(
            f"restriction to components is not T-absolutely continuous at {verdict.witness}",
            witness=verdict.witness,
        )
    return mu
