"""Full verification suite: identities and pointwise relations for each semiclassical weight."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from tqdm import tqdm

from ..recurrence.chebyshev import recurrence_escalated
from ..recurrence.sequences import RecurrenceSeq, subleading_from_b
from ..utils.precision import PrecisionContext
from ..utils.serialization import SCHEMA_VERSION, write_json
from ..weights.families import WeightSpec
from .auxiliary import aux_from_delta
from .identities import IdentityReport, identities_from_recurrence
from .ladder import check_pointwise

logger = logging.getLogger(__name__)

DEFAULT_WEIGHTS = (
    WeightSpec("semiclassical_sw", q="0.5", alpha="0.5"),
    WeightSpec("semiclassical_qlaguerre", q="0.5", alpha="0", p="0.25"),
    WeightSpec("little_qlaguerre_lattice", q="0.5", alpha="1"),
)
DEFAULT_DEPTH = {"semiclassical_sw": 8, "semiclassical_qlaguerre": 8, "little_qlaguerre_lattice": 12}


def perturb_recurrence(rec: RecurrenceSeq, eps, ctx: PrecisionContext) -> RecurrenceSeq:
    """Scale every b_n by (1 + eps); used to confirm the suite detects corruption"""
    factor = 1 + ctx.mpf(eps)
    return RecurrenceSeq([ctx.mpf(b) * factor for b in rec.b], list(rec.a2), rec.source, rec.spec, rec.digits)


@dataclass
class SuiteReport:
    """Reports grouped per weight"""
    digits: int
    perturb: Optional[str] = None
    results: Dict[str, List[IdentityReport]] = field(default_factory=dict)

    @property
    def reports(self) -> List[IdentityReport]:
        return [report for reports in self.results.values() for report in reports]

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @property
    def failures(self) -> List[str]:
        return [report.id for report in self.reports if not report.passed]

    def to_dict(self, ctx: PrecisionContext) -> Dict[str, Any]:
        return {
            "schema": f"qladder.verify/{SCHEMA_VERSION}",
            "precision_digits": self.digits,
            "perturb": self.perturb,
            "passed": self.passed,
            "reports": [report.to_dict(ctx) for report in self.reports],
        }

    def to_json(self, ctx: PrecisionContext, path: Optional[Union[str, Path]] = None) -> str:
        return write_json(self.to_dict(ctx), path)


def verify_weight(
    spec: WeightSpec,
    N: int,
    ctx: PrecisionContext,
    tol=None,
    perturb=None,
    rec: Optional[RecurrenceSeq] = None,
) -> List[IdentityReport]:
    """Identities plus pointwise relations for one weight"""
    if rec is None:
        rec = recurrence_escalated(spec, N + 1, ctx)
    if perturb:
        rec = perturb_recurrence(rec, perturb, ctx)
    reports = identities_from_recurrence(rec, ctx, spec, tol)
    aux = aux_from_delta(rec, subleading_from_b(rec), ctx, spec)
    reports += check_pointwise(aux, rec, ctx, tol=tol)
    return reports


def run_suite(
    ctx: PrecisionContext,
    weights: Iterable[WeightSpec] = DEFAULT_WEIGHTS,
    N: Optional[int] = None,
    tol=None,
    perturb=None,
    progress: bool = False,
) -> SuiteReport:
    """
    Verify every weight in ``weights``; depth defaults to 8 for the continuous
    weights and 12 for the lattice weight.
    """
    weights = list(weights)
    suite = SuiteReport(ctx.digits, None if perturb is None else str(perturb))
    for spec in tqdm(weights, desc="weights", disable=not progress):
        depth = N if N is not None else DEFAULT_DEPTH.get(spec.family, 8)
        reports = verify_weight(spec, depth, ctx, tol=tol, perturb=perturb)
        suite.results[spec.family] = reports
        failed = sum(not r.passed for r in reports)
        logger.info(f"{spec.family}: {len(reports) - failed}/{len(reports)} checks pass at N={depth}")
    return suite
