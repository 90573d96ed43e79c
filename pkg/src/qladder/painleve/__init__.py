from .equations import (
    FAMILY_VARIANT,
    THEOREM_VARIANTS,
    VARIANT_FAMILY,
    VARIANTS,
    general_residual,
    general_step,
    qp3_thm1_step,
    qp5_thm2_step,
    qp5_thm3_step,
    variant_residual,
)
from .orbits import (
    Certification,
    PainleveOrbit,
    certify_orbit,
    coefficients_from_orbit,
    iterate_orbit,
    orbit_from_recurrence,
    theorem_orbit,
    thm1_coeffs_from_orbit,
    thm1_initial,
    thm2_coeffs_from_orbit,
    thm2_initial,
    thm2_to_thm1,
    thm3_coeffs_from_orbit,
    thm3_initial,
)

__all__ = [
    "FAMILY_VARIANT",
    "THEOREM_VARIANTS",
    "VARIANT_FAMILY",
    "VARIANTS",
    "Certification",
    "PainleveOrbit",
    "certify_orbit",
    "coefficients_from_orbit",
    "general_residual",
    "general_step",
    "iterate_orbit",
    "orbit_from_recurrence",
    "qp3_thm1_step",
    "qp5_thm2_step",
    "qp5_thm3_step",
    "theorem_orbit",
    "thm1_coeffs_from_orbit",
    "thm1_initial",
    "thm2_coeffs_from_orbit",
    "thm2_initial",
    "thm2_to_thm1",
    "thm3_coeffs_from_orbit",
    "thm3_initial",
    "variant_residual",
]
