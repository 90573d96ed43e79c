"""
Residual checks for the intermediate identities of the ladder-operator
derivation, one :class:`IdentityReport` per identity.

Each identity is written as a list of terms summing to zero; its residual at
index n is |sum| / sum |term|.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..recurrence.chebyshev import recurrence_escalated
from ..recurrence.sequences import RecurrenceSeq, SubleadingSeq, subleading_from_b
from ..utils.precision import PrecisionContext
from ..weights.families import WeightSpec
from .auxiliary import AuxSeq, R_by_recursion, aux_from_delta, r_by_recursion, section_for, t_by_recursion

logger = logging.getLogger(__name__)

Terms = Callable[[int], Sequence[Any]]


@dataclass
class IdentityReport:
    """Worst relative residual of one identity over an index range"""
    id: str
    indices: Tuple[int, int]
    residuals: List[Any]
    max_residual: Any
    tol: Any
    first_failure: Optional[int]
    params: Dict[str, Any]

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def to_dict(self, ctx: PrecisionContext) -> Dict[str, Any]:
        return {
            "id": self.id,
            "indices": list(self.indices),
            "max_residual": ctx.mp.nstr(self.max_residual, 5),
            "tol": ctx.mp.nstr(self.tol, 5),
            "passed": self.passed,
            "first_failure": self.first_failure,
            "params": self.params,
        }


def default_tolerance(ctx: PrecisionContext):
    """10^{-digits/3}"""
    return ctx.mpf(10) ** (-(ctx.digits // 3))


def relative_residual(terms: Sequence[Any], ctx: PrecisionContext):
    scale = sum(abs(term) for term in terms)
    if not scale:
        return ctx.mpf(0)
    return abs(sum(terms)) / scale


def evaluate(identity_id: str, terms: Terms, indices: range, ctx: PrecisionContext, tol, params) -> IdentityReport:
    residuals, first_failure = [], None
    for n in indices:
        residual = relative_residual(terms(n), ctx)
        residuals.append(residual)
        if first_failure is None and not residual <= tol:
            first_failure = n
    worst = max(residuals) if residuals else ctx.mpf(0)
    if first_failure is not None:
        logger.warning(f"{identity_id} fails first at n={first_failure} (worst residual {ctx.mp.nstr(worst, 3)})")
    return IdentityReport(identity_id, (indices.start, indices.stop - 1), residuals, worst, tol, first_failure, params)


def _at(seq: Sequence[Any], n: int):
    """seq[n], or 0 below the start (always multiplied by a_0^2 = 0 or r_0 + 1 - q^0 = 0)"""
    return seq[n] if n >= 0 else 0


def _t_identities(aux: AuxSeq, rec: RecurrenceSeq, ctx: PrecisionContext) -> Dict[str, Tuple[Terms, range]]:
    """Identities of the two continuous semiclassical weights"""
    q, alpha, A, c = aux.q, aux.alpha, aux.A, aux.c
    T, t, r, y, delta = aux.T, aux.t, aux.r, aux.y, aux.delta
    N = aux.depth
    b = [ctx.mpf(v) for v in rec.b]
    a2 = [ctx.mpf(rec.a_sq(n)) for n in range(N + 1)]
    t_rec = t_by_recursion(aux, rec, ctx)
    full, inner = range(0, N + 1), range(0, N)
    s4 = aux.section == "s4"

    def T_sum(n):
        return [*T[: n + 1], q ** n * delta[n + 1]]

    def r_step(n):
        return [r[n + 1], -r[n], (1 - q) * T[n]]

    def tT(n):
        return [t[n + 1], t[n], b[n] * T[n], -A] + ([c * (q ** n + q ** (n + 1) - 1)] if s4 else [])

    def rT(n):
        return [r[n + 1], r[n], b[n] * q ** n, -T[n], -(q - 1) * sum(T[: n + 1])]

    def tTT(n):
        terms = [-b[n] * t[n + 1], b[n] * t[n], -a2[n + 1] * T[n + 1], a2[n] * _at(T, n - 1)]
        return terms + ([b[n] * q ** n * (1 - q) * c] if s4 else [])

    def tr(n):
        return [
            t[n + 1], -q * t[n], -b[n] * r[n + 1], b[n] * r[n],
            -a2[n + 1] * q ** (n + 1), a2[n] * q ** (n - 1),
        ]

    def rr(n):
        return [b[n] * q ** n * (1 - q), r[n + 1], -q * r[n]]

    def b_r(n):
        return [b[n] * (1 - q ** (n + 1)), r[n + 1], -b[n] * (1 - q ** n), -q * r[n]]

    def at(n):
        terms = [a2[n] * q ** (2 * n - 1), -(A + c) * (1 - q ** n), -q ** n * t_rec[n]]
        return terms + ([c * (1 - q ** (2 * n))] if s4 else [])

    def TT(n):
        if not s4:
            return [a2[n] * T[n] * _at(T, n - 1), -t[n] * (t[n] - A)]
        return [
            a2[n] * T[n] * _at(T, n - 1),
            -t[n] * (t[n] - A - c + 2 * c * q ** n),
            -c * (A + c) * (1 - q ** n),
            c * c * (1 - q ** (2 * n)),
        ]

    def ba(n):
        return [q ** (2 * n + alpha - 1) * a2[n] * (_at(delta, n - 1) - q * delta[n + 1]), (1 - q) * delta[n]]

    def alpha_id(n):
        return [
            b[n] * q ** n,
            -b[n] * q ** (3 * n + alpha - 1) * a2[n],
            -T[n],
            -q ** (2 * n + alpha) * a2[n] * _at(T, n - 1),
        ]

    def T_square(n):
        if s4:
            return [T[n] ** 2, -q ** (2 * n + alpha) * y[n] * y[n + 1], q ** (2 * n + alpha) * c * A]
        return [T[n] ** 2, -q ** (2 * n + alpha) * (t[n] - A) * (t[n + 1] - A)]

    if not s4:
        return {
            "s3.T": (T_sum, full),
            "s3.r": (r_step, full),
            "s3.tT": (tT, inner),
            "s3.rT": (rT, full),
            "s3.tTT": (tTT, inner),
            "s3.tr": (tr, inner),
            "s3.rr": (rr, full),
            "s3.TT": (TT, full),
            "s3.at": (at, full),
            "s3.ba": (ba, full),
            "s3.alpha": (alpha_id, full),
            "s3.T_n^2": (T_square, inner),
        }
    return {
        "s4.T": (T_sum, full),
        "s4.r": (r_step, full),
        "s4.10": (tT, inner),
        "s4.11": (rT, full),
        "s4.20": (tTT, inner),
        "s4.21": (tr, inner),
        "s4.22": (b_r, full),
        "s4.21'": (at, full),
        "s4.20'": (TT, full),
        "s4.p_1": (ba, full),
        "s4.alpha": (alpha_id, full),
        "s4.T_n^2": (T_square, inner),
    }


def _lattice_identities(aux: AuxSeq, rec: RecurrenceSeq, ctx: PrecisionContext) -> Dict[str, Tuple[Terms, range]]:
    """Identities of the little q-Laguerre lattice weight"""
    q, alpha, A = aux.q, aux.alpha, aux.A
    r, R = aux.r, aux.R
    N = aux.depth
    b = [ctx.mpf(v) for v in rec.b]
    a2 = [ctx.mpf(rec.a_sq(n)) for n in range(N + 1)]
    R_rec = R_by_recursion(aux, rec, ctx)
    r_rec = r_by_recursion(aux, rec, ctx)
    full, inner = range(0, N + 1), range(0, N)

    def rR(n):
        return [r[n + 1], r[n], b[n] * R[n], 1, -A]

    def bR(n):
        return [b[n] * q ** (1 - n - alpha), -R_rec[n], -(q - 1) * sum(R_rec[: n + 1])]

    def aRbr(n):
        return [a2[n + 1] * R[n + 1], -a2[n] * _at(R, n - 1), b[n] * r[n + 1], -b[n] * r[n]]

    def ar(n):
        return [q ** (-n - alpha) * a2[n + 1], -q ** (2 - n - alpha) * a2[n], -r[n + 1], q * r[n], -1, q]

    def a2r(n):
        return [a2[n], -q ** (n + alpha - 1) * (r_rec[n] + 1 - q ** n)]

    def aRR(n):
        return [a2[n] * R[n] * _at(R, n - 1), -r[n] * (r[n] + 1 - A)]

    def bRR(n):
        return [b[n] * (1 + r[n]) * q ** (1 - alpha - n), -q ** (n + 1) * R[n], _at(R, n - 1) * (r[n] + 1 - q ** n)]

    def R_square(n):
        return [R[n] ** 2, q ** (-2 * n - alpha) * (r[n] + 1) * (r[n + 1] + 1), -q ** (-2 * n - alpha) * A]

    return {
        "s5.rR": (rR, inner),
        "s5.bR": (bR, inner),
        "s5.aRbr": (aRbr, inner),
        "s5.ar": (ar, inner),
        "s5.a2r": (a2r, full),
        "s5.aRR": (aRR, full),
        "s5.bRR": (bRR, full),
        "s5.R^2": (R_square, inner),
    }


def identity_table(aux: AuxSeq, rec: RecurrenceSeq, ctx: PrecisionContext) -> Dict[str, Tuple[Terms, range]]:
    if aux.section == "s5":
        return _lattice_identities(aux, rec, ctx)
    return _t_identities(aux, rec, ctx)


def initial_report(aux: AuxSeq, ctx: PrecisionContext, tol, params) -> IdentityReport:
    """t_0 = r_0 = 0, judged on the absolute value |t_0| + |r_0|"""
    residual = ctx.mpf(aux.initial_residual)
    first_failure = None if residual <= tol else 0
    if first_failure is not None:
        logger.warning(f"t_0/r_0 consistency residual {ctx.mp.nstr(residual, 3)}")
    return IdentityReport(f"{aux.section}.initial", (0, 0), [residual], residual, tol, first_failure, params)


def identities_from_recurrence(
    rec: RecurrenceSeq,
    ctx: PrecisionContext,
    spec: Optional[WeightSpec] = None,
    tol=None,
    deltas: Optional[SubleadingSeq] = None,
) -> List[IdentityReport]:
    """
    Run every identity of the weight's section on a given recurrence.

    ``deltas`` defaults to the subleading coefficients telescoped from b_n;
    pass independently computed ones to check them against the recurrence.
    """
    spec = spec or rec.spec
    tol = default_tolerance(ctx) if tol is None else ctx.mpf(tol)
    aux = aux_from_delta(rec, deltas or subleading_from_b(rec), ctx, spec)
    params = spec.to_dict()
    reports = [initial_report(aux, ctx, tol, params)]
    for identity_id, (terms, indices) in identity_table(aux, rec, ctx).items():
        reports.append(evaluate(identity_id, terms, indices, ctx, tol, params))
    return reports


def check_identities(
    spec: WeightSpec,
    N: int,
    ctx: PrecisionContext,
    tol=None,
    rec: Optional[RecurrenceSeq] = None,
) -> List[IdentityReport]:
    """
    Residuals of every identity for n <= N, from the Hankel-derived
    recurrence to depth N + 1.
    """
    section_for(spec)
    if rec is None:
        rec = recurrence_escalated(spec, N + 1, ctx)
    reports = identities_from_recurrence(rec.truncated(N + 1), ctx, spec, tol)
    failed = [r.id for r in reports if not r.passed]
    logger.info(f"{spec.family}: {len(reports) - len(failed)}/{len(reports)} identities pass")
    return reports
