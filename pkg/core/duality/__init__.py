"""
T-сильные двойственные пространства
"""
from core.duality.base import (
    DualFunctional, RawFunctional, functional_scale, functional_sum, homogeneity_witness,
    require_homogeneous,
)
from core.duality.charge import ChargeFunctional, charge_to_linfty, linfty_to_charge
from core.duality.conjecture import conjecture_probe, conjecture_sweep, probe_instance
from core.duality.kernel import (
    KernelFunctional, l1_recover, l1_representation, l2_recover, l2_representation,
    recover_kernel,
)
from core.duality.norms import (
    cauchy_schwarz_certificate, check_bounded, dual_ideal_check, dual_norm, dual_norm_axioms,
    dual_norm_representations, functional_lattice, functional_lattice_oracle,
    positive_part_by_oracle,
)
from core.duality.product import BlockTriple, ProductDecomposition, ZeroExtension, product_decomposition

__all__ = [
    "DualFunctional",
    "RawFunctional",
    "KernelFunctional",
    "ChargeFunctional",
    "ZeroExtension",
    "BlockTriple",
    "ProductDecomposition",
    "functional_sum",
    "functional_scale",
    "homogeneity_witness",
    "require_homogeneous",
    "dual_norm",
    "dual_norm_representations",
    "dual_norm_axioms",
    "check_bounded",
    "cauchy_schwarz_certificate",
    "functional_lattice",
    "functional_lattice_oracle",
    "positive_part_by_oracle",
    "dual_ideal_check",
    "l1_representation",
    "l1_recover",
    "l2_representation",
    "l2_recover",
    "recover_kernel",
    "linfty_to_charge",
    "charge_to_linfty",
    "conjecture_probe",
    "conjecture_sweep",
    "probe_instance",
    "product_decomposition",
]
