"""
Ladder functions A_n(x), B_n(x) in closed form and the pointwise checks of the
lowering relation

    D_q P_n(x) = a_n^2 A_n(x) P_{n-1}(x) - B_n(x) P_n(x)

and the compatibility relations

    B_{n+1} + B_n = (x - b_n) A_n + x (q-1) sum_{j<=n} A_j - u(qx)
    1 + (x - b_n) B_{n+1} - (qx - b_n) B_n = a_{n+1}^2 A_{n+1} - a_n^2 A_{n-1}
"""

from typing import Any, List, Optional, Sequence, Tuple

from ..errors import ZeroDenominator
from ..recurrence.sequences import RecurrenceSeq, eval_polynomial
from ..special.qseries import dq_difference
from ..utils.precision import PrecisionContext
from ..weights.families import potential
from .auxiliary import AuxSeq
from .identities import IdentityReport, default_tolerance, evaluate

SAMPLE_POINTS = ("1/3", "1", "e")
LOWERING_DEPTH = 5


def sample_points(ctx: PrecisionContext) -> List[Any]:
    return [ctx.mpf(1) / 3, ctx.mpf(1), ctx.mp.e]


def ab_functions(aux: AuxSeq, n: int, x, ctx: PrecisionContext) -> Tuple[Any, Any]:
    """
    (A_n(x), B_n(x)).

    s3: A = T_n/((1-q)x^3) + q^n/((1-q)x^2)
        B = -(1-q^n)/((1-q)x) + r_n/((1-q)x^2) + t_n/((1-q)x^3)
    s4: A = q^2 T_n/((1-q)x(p+q^2x^2)) + q^{n+2}/((1-q)(p+q^2x^2))
        B = -(1-q^n)/((1-q)x) + q^2 r_n/((1-q)(p+q^2x^2)) + q^2 t_n/((1-q)x(p+q^2x^2))
    s5: A = R_n/((1-q)x) + q^{1-n-alpha}/(1-q),  B = r_n/((1-q)x)

    Raises:
        ZeroDenominator: x = 0, or p + q^2 x^2 = 0
    """
    x = ctx.mpf(x)
    if not x:
        raise ZeroDenominator("ladder functions are singular at x = 0")
    q = aux.q
    one_q = 1 - q
    if aux.section == "s5":
        return aux.R[n] / (one_q * x) + q ** (1 - n - aux.alpha) / one_q, aux.r[n] / (one_q * x)
    if aux.section == "s3":
        A = aux.T[n] / (one_q * x ** 3) + q ** n / (one_q * x ** 2)
        B = -(1 - q ** n) / (one_q * x) + aux.r[n] / (one_q * x ** 2) + aux.t[n] / (one_q * x ** 3)
        return A, B
    den = aux.p + q * q * x * x
    if not den:
        raise ZeroDenominator("p + q^2 x^2 vanishes")
    A = q * q * aux.T[n] / (one_q * x * den) + q ** (n + 2) / (one_q * den)
    B = -(1 - q ** n) / (one_q * x) + q * q * aux.r[n] / (one_q * den) + q * q * aux.t[n] / (one_q * x * den)
    return A, B


def check_pointwise(
    aux: AuxSeq,
    rec: RecurrenceSeq,
    ctx: PrecisionContext,
    samples: Optional[Sequence] = None,
    tol=None,
    max_n: int = LOWERING_DEPTH,
) -> List[IdentityReport]:
    """
    Lowering relation for n <= max_n and both compatibility relations, each at
    every sample point. Reports are named ``<section>.lowering@x`` and so on.
    """
    tol = default_tolerance(ctx) if tol is None else ctx.mpf(tol)
    samples = sample_points(ctx) if samples is None else [ctx.mpf(x) for x in samples]
    labels = list(SAMPLE_POINTS) if len(samples) == len(SAMPLE_POINTS) else [ctx.mp.nstr(x, 6) for x in samples]
    spec = rec.spec
    q = aux.q
    N = aux.depth
    b = [ctx.mpf(v) for v in rec.b]

    reports = []
    for label, x in zip(labels, samples):
        ab = [ab_functions(aux, n, x, ctx) for n in range(N + 1)]
        A = [pair[0] for pair in ab]
        B = [pair[1] for pair in ab]
        u_qx = potential(spec, x, ctx, shifted=True)

        def lowering(n, x=x, A=A, B=B):
            dP = dq_difference(lambda y: eval_polynomial(rec, n, y, ctx), x, q, ctx)
            P_prev = eval_polynomial(rec, n - 1, x, ctx) if n else 0
            return [dP, -rec.a_sq(n) * A[n] * P_prev, B[n] * eval_polynomial(rec, n, x, ctx)]

        def rel1(n, x=x, A=A, B=B, u_qx=u_qx):
            return [B[n + 1], B[n], -(x - b[n]) * A[n], -x * (q - 1) * sum(A[: n + 1]), u_qx]

        def rel2(n, x=x, A=A, B=B):
            A_prev = A[n - 1] if n else 0
            return [
                1, (x - b[n]) * B[n + 1], -(q * x - b[n]) * B[n],
                -rec.a_sq(n + 1) * A[n + 1], rec.a_sq(n) * A_prev,
            ]

        params = {**spec.to_dict(), "x": label}
        reports.append(evaluate(f"{aux.section}.lowering@{label}", lowering, range(0, min(max_n, N) + 1), ctx, tol, params))
        reports.append(evaluate(f"{aux.section}.rel1@{label}", rel1, range(0, N), ctx, tol, params))
        reports.append(evaluate(f"{aux.section}.rel2@{label}", rel2, range(0, N), ctx, tol, params))
    return reports
