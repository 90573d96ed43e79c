from .auxiliary import SECTIONS, AuxSeq, aux_from_delta
from .identities import IdentityReport, check_identities, identities_from_recurrence
from .ladder import ab_functions, check_pointwise
from .suite import DEFAULT_WEIGHTS, SuiteReport, perturb_recurrence, run_suite, verify_weight

__all__ = [
    "DEFAULT_WEIGHTS",
    "SECTIONS",
    "AuxSeq",
    "IdentityReport",
    "SuiteReport",
    "ab_functions",
    "aux_from_delta",
    "check_identities",
    "check_pointwise",
    "identities_from_recurrence",
    "perturb_recurrence",
    "run_suite",
    "verify_weight",
]
