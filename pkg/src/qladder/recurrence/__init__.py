from .chebyshev import recurrence_escalated, recurrence_from_moments
from .sequences import (
    CLOSED_FORM_FAMILIES,
    RecurrenceSeq,
    SubleadingSeq,
    closed_form_recurrence,
    closed_form_sequence,
    eval_polynomial,
    gamma_squared,
    orthogonality_matrix,
    polynomial_coefficients,
    shifted_recurrence,
    subleading_from_b,
)

__all__ = [
    "CLOSED_FORM_FAMILIES",
    "RecurrenceSeq",
    "SubleadingSeq",
    "closed_form_recurrence",
    "closed_form_sequence",
    "eval_polynomial",
    "gamma_squared",
    "orthogonality_matrix",
    "polynomial_coefficients",
    "recurrence_escalated",
    "recurrence_from_moments",
    "shifted_recurrence",
    "subleading_from_b",
]
