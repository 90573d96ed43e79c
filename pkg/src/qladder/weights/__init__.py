"""Weight families, potentials and moment tables"""

from .families import (
    FAMILIES,
    LATTICE_FAMILIES,
    PearsonReport,
    WeightSpec,
    check_pearson,
    eval_weight,
    numeric_potential,
    pearson_bases,
    potential,
    weight_function,
)
from .moments import (
    ClosedFormMoment,
    MomentEstimate,
    MomentTable,
    build_moment_table,
    moments_closed_form,
    moments_lattice,
    moments_quadrature,
    pearson_ratio,
    quadrature_moments,
)

__all__ = [
    "FAMILIES",
    "LATTICE_FAMILIES",
    "PearsonReport",
    "WeightSpec",
    "check_pearson",
    "eval_weight",
    "numeric_potential",
    "pearson_bases",
    "potential",
    "weight_function",
    "ClosedFormMoment",
    "MomentEstimate",
    "MomentTable",
    "build_moment_table",
    "moments_closed_form",
    "moments_lattice",
    "moments_quadrature",
    "pearson_ratio",
    "quadrature_moments",
]
