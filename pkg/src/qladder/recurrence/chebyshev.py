"""
Recurrence coefficients from moments (Chebyshev algorithm).

The mixed moments sigma_{k,l} = <P_k, x^l> obey

    sigma_{k,l} = sigma_{k-1,l+1} - b_{k-1} sigma_{k-1,l} - a_{k-1}^2 sigma_{k-2,l}

with sigma_{-1,l} = 0 and sigma_{0,l} = mu_l, and then

    b_k   = sigma_{k,k+1}/sigma_{k,k} - sigma_{k-1,k}/sigma_{k-1,k-1}
    a_k^2 = sigma_{k,k}/sigma_{k-1,k-1}

The map loses roughly n^2 log10(1/q) digits at depth n, so callers normally go
through :func:`recurrence_escalated`.
"""

import logging
from typing import Optional

from ..errors import PrecisionExhausted
from ..utils.precision import PrecisionContext, run_escalated
from ..weights.families import WeightSpec
from ..weights.moments import MomentTable, build_moment_table
from .sequences import RecurrenceSeq

logger = logging.getLogger(__name__)


def recurrence_from_moments(table: MomentTable, ctx: PrecisionContext, N: Optional[int] = None) -> RecurrenceSeq:
    """
    b_0..b_N and a_1^2..a_N^2 from mu_0..mu_{L-1}.

    b_k needs L >= 2k+2 and a_k^2 needs L >= 2k+1, so a table of 2N+2 entries
    gives both sequences up to N.

    Raises:
        PrecisionExhausted: sigma_{k,k} <= 0 (cancellation consumed the digits)
        ValueError: table too short for the requested N
    """
    mu = [ctx.mpf(v) for v in table.values]
    L = len(mu)
    if N is None:
        N = (L - 2) // 2
    if L < 2 * N + 2:
        raise ValueError(f"{L} moments give b_n only up to n = {(L - 2) // 2}; asked for {N}")
    if not mu[0] > 0:
        raise PrecisionExhausted(f"mu_0 = {ctx.mp.nstr(mu[0], 5)} is not positive")

    zero = ctx.mpf(0)
    sigma_prev = [zero] * L
    sigma = list(mu)
    b = [mu[1] / mu[0]]
    a2 = [None]
    beta_prev = mu[0]

    for k in range(1, N + 1):
        row = [zero] * L
        for l in range(k, L - k):
            row[l] = sigma[l + 1] - b[k - 1] * sigma[l] - beta_prev * sigma_prev[l]
        if not row[k] > 0:
            raise PrecisionExhausted(
                f"sigma_{k},{k} = {ctx.mp.nstr(row[k], 5)} at {ctx.digits} digits; moments lost positivity"
            )
        beta = row[k] / sigma[k - 1]
        b.append(row[k + 1] / row[k] - sigma[k] / sigma[k - 1])
        a2.append(beta)
        sigma_prev, sigma, beta_prev = sigma, row, beta

    return RecurrenceSeq(b, a2, "hankel", table.spec, ctx.digits)


def recurrence_escalated(
    spec: WeightSpec,
    N: int,
    ctx: PrecisionContext,
    method: str = "auto",
    rule: str = "trapezoid",
) -> RecurrenceSeq:
    """
    Certified b_0..b_N, a_1^2..a_N^2: moments and the Chebyshev map run at
    the escalated precision and again at the verifying precision, and the
    two must agree to ``ctx.digits``.
    """
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")

    def compute(work: PrecisionContext) -> RecurrenceSeq:
        table = build_moment_table(spec, 2 * N + 1, work, method=method, rule=rule)
        return recurrence_from_moments(table, work, N)

    rec, used = run_escalated(compute, ctx, N, spec.q_float(), values=lambda r: r.b + r.a2[1:])
    logger.info(f"{spec.family}: recurrence to N={N} certified to {ctx.digits} digits (computed at {used.digits})")
    rec.digits = ctx.digits
    return rec
