"""
Error-bounded q-series primitives.

q-Pochhammer symbols, the Jacobi triple product, terminating basic
hypergeometric sums, the q-difference operator and the Jackson q-integral.
All routines take an explicit :class:`~qladder.utils.precision.PrecisionContext`.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable

from ..errors import (
    DivergentInput,
    NoConvergence,
    PoleInLowerParameter,
    ZeroArgument,
)
from ..utils.precision import PrecisionContext

logger = logging.getLogger(__name__)

# |x| q^K < eps / TRUNCATION_GUARD ends an infinite product
TRUNCATION_GUARD = 8


@dataclass(frozen=True)
class QParam:
    """
    Base q of a q-family, strictly inside (0, 1).

    The raw value is kept (decimal strings stay exact) and converted into a
    working context on demand with :meth:`at`.
    """
    value: Any

    def __post_init__(self):
        value = self.value
        if isinstance(value, QParam):
            value = value.value
        if isinstance(value, float):
            value = repr(value)
        object.__setattr__(self, "value", value)
        try:
            approx = float(value)
        except (TypeError, ValueError):
            raise ValueError(f"q must be a real number, got {value!r}")
        if not 0 < approx < 1:
            raise ValueError(f"q must lie strictly inside (0, 1), got {value!r}")

    def at(self, ctx: PrecisionContext):
        return ctx.mpf(self.value)

    def __float__(self):
        return float(self.value)


@dataclass
class TruncatedProduct:
    """Truncated infinite product with a bound on |true - value|"""
    value: Any
    terms_used: int
    tail_bound: Any


def as_q(q, ctx: PrecisionContext):
    """Resolve a QParam, string or number into a context mpf"""
    if not isinstance(q, QParam):
        q = QParam(q)
    return q.at(ctx)


def qpoch_finite(x, q, n: int, ctx: PrecisionContext):
    """(x; q)_n = prod_{k<n} (1 - x q^k); the empty product is 1."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    x, q = ctx.mpf(x), as_q(q, ctx)
    result = ctx.mpf(1)
    term = x
    for _ in range(n):
        result *= 1 - term
        term *= q
    return result


def qpoch_infinite(x, q, ctx: PrecisionContext, eps=None) -> TruncatedProduct:
    """
    (x; q)_inf truncated at the first K with |x| q^K < eps / 8.

    The tail prod_{k>=K}(1 - x q^k) has |log| <= t/((1-q)(1-t)) with
    t = |x| q^K, which gives the returned ``tail_bound``. A vanishing factor
    (x = q^-m) returns an exact zero with ``tail_bound`` 0.
    """
    mp = ctx.mp
    x, q = ctx.mpf(x), as_q(q, ctx)
    eps = ctx.eps if eps is None else ctx.mpf(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if not mp.isfinite(x):
        raise DivergentInput(f"(x;q)_inf needs finite x, got {x}")
    if not x:
        return TruncatedProduct(ctx.mpf(1), 0, ctx.mpf(0))

    threshold = eps / TRUNCATION_GUARD
    zero_tol = 16 * mp.eps
    value = ctx.mpf(1)
    term = x
    k = 0
    while abs(term) >= threshold:
        factor = 1 - term
        if abs(factor) <= zero_tol:
            return TruncatedProduct(ctx.mpf(0), k + 1, ctx.mpf(0))
        value *= factor
        term *= q
        k += 1

    t = abs(term)
    log_bound = t / ((1 - q) * (1 - t))
    return TruncatedProduct(value, k, abs(value) * mp.expm1(log_bound))


def theta_sum(z, base, ctx: PrecisionContext, eps=None) -> TruncatedProduct:
    """
    sum_{k in Z} base^{k(k-1)/2} z^k for z > 0.

    Equals (base; base)_inf (-z; base)_inf (-base/z; base)_inf (Jacobi triple
    product). All terms are positive, so the sum loses no digits.
    """
    mp = ctx.mp
    z, Q = ctx.mpf(z), as_q(base, ctx)
    if z <= 0:
        raise ValueError(f"theta_sum needs z > 0, got {z}")
    eps = ctx.eps if eps is None else ctx.mpf(eps)

    total = ctx.mpf(1)
    terms = 1
    bound = ctx.mpf(0)
    # k >= 1: term_{k} = term_{k-1} * Q^{k-1} z
    term, ratio = ctx.mpf(1), z
    while True:
        term *= ratio
        total += term
        terms += 1
        ratio *= Q
        if ratio < 1 and term * ratio < eps * total * (1 - ratio):
            bound += term * ratio / (1 - ratio)
            break
    # k <= -1: term_{k} = term_{k+1} * Q^{-k} / z
    term, ratio = ctx.mpf(1), Q / z
    while True:
        term *= ratio
        total += term
        terms += 1
        ratio *= Q
        if ratio < 1 and term * ratio < eps * total * (1 - ratio):
            bound += term * ratio / (1 - ratio)
            break
    return TruncatedProduct(total, terms, bound)


def theta_product(z, q, ctx: PrecisionContext, eps=None) -> TruncatedProduct:
    """(-z; q)_inf (-q/z; q)_inf for z > 0 via the triple product"""
    series = theta_sum(z, q, ctx, eps)
    euler = qpoch_infinite(as_q(q, ctx), q, ctx, eps)
    value = series.value / euler.value
    bound = series.tail_bound / euler.value + value * euler.tail_bound / euler.value
    return TruncatedProduct(value, series.terms_used + euler.terms_used, bound)


def q_binomial(n: int, k: int, q, ctx: PrecisionContext):
    """Gaussian binomial coefficient [n choose k]_q"""
    if k < 0 or k > n:
        return ctx.mpf(0)
    return (
        qpoch_finite(as_q(q, ctx), q, n, ctx)
        / (qpoch_finite(as_q(q, ctx), q, k, ctx) * qpoch_finite(as_q(q, ctx), q, n - k, ctx))
    )


def dq_difference(f: Callable, x, q, ctx: PrecisionContext):
    """
    q-difference quotient (f(x) - f(qx)) / (x (1 - q)).

    Raises:
        ZeroArgument: at x = 0, where the quotient becomes f'(0)
    """
    x, q = ctx.mpf(x), as_q(q, ctx)
    if not x:
        raise ZeroArgument("D_q at x = 0 needs f'(0); supply it directly")
    return (f(x) - f(q * x)) / (x * (1 - q))


def jackson_qintegral(
    f: Callable,
    q,
    ctx: PrecisionContext,
    tol=None,
    bound=None,
    max_terms: int = 100_000,
):
    """
    Jackson q-integral of ``f`` over [0, 1]: (1 - q) sum_k q^k f(q^k).

    Summation stops once the geometric tail q^K * M is below ``tol``, where M
    is ``bound`` (a bound on |f| over (0, q^K]) or, when absent, the largest
    |f| seen so far.

    Raises:
        NoConvergence: tail not below ``tol`` after ``max_terms`` terms
    """
    q = as_q(q, ctx)
    tol = ctx.tol if tol is None else ctx.mpf(tol)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    fixed_bound = None if bound is None else ctx.mpf(bound)

    total = ctx.mpf(0)
    node = ctx.mpf(1)
    seen = ctx.mpf(0)
    for k in range(max_terms):
        value = f(node)
        total += node * value
        seen = max(seen, abs(value))
        node *= q
        tail = node * (fixed_bound if fixed_bound is not None else seen)
        if tail < tol:
            logger.debug(f"Jackson sum converged after {k + 1} terms")
            return (1 - q) * total
    raise NoConvergence(f"Jackson q-integral tail still above tol after {max_terms} terms")


def _pole_check(b, q, n: int, ctx: PrecisionContext):
    if not b:
        return
    factor = ctx.mpf(1)
    for m in range(n):
        if abs(1 - b * factor) <= 16 * ctx.eps:
            raise PoleInLowerParameter(f"lower parameter equals q^-{m} with m < n = {n}")
        factor *= q


def eval_phi11(n: int, b, q, z, ctx: PrecisionContext):
    """
    Terminating 1phi1(q^-n; b; q, z).

    Summed by forward term ratios
    t_{k+1}/t_k = (1 - q^{k-n}) (-q^k z) / ((1 - q^{k+1})(1 - b q^k)).
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    b, q, z = ctx.mpf(b), as_q(q, ctx), ctx.mpf(z)
    _pole_check(b, q, n, ctx)
    total = term = ctx.mpf(1)
    qk = ctx.mpf(1)
    q_minus_n = q ** (-n)
    for _ in range(n):
        term *= (1 - q_minus_n * qk) * (-qk * z) / ((1 - q * qk) * (1 - b * qk))
        total += term
        qk *= q
    return total


def eval_phi21(n: int, b, q, z, ctx: PrecisionContext, a2=0):
    """
    Terminating 2phi1(q^-n, a2; b; q, z); ``a2`` defaults to 0.

    Term ratio (1 - q^{k-n})(1 - a2 q^k) z / ((1 - q^{k+1})(1 - b q^k)).
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    b, q, z, a2 = ctx.mpf(b), as_q(q, ctx), ctx.mpf(z), ctx.mpf(a2)
    _pole_check(b, q, n, ctx)
    total = term = ctx.mpf(1)
    qk = ctx.mpf(1)
    q_minus_n = q ** (-n)
    for _ in range(n):
        term *= (1 - q_minus_n * qk) * (1 - a2 * qk) * z / ((1 - q * qk) * (1 - b * qk))
        total += term
        qk *= q
    return total


def stieltjes_wigert_monic(n: int, x, q, ctx: PrecisionContext):
    """Monic Stieltjes-Wigert P_n(x) = (-1)^n q^{-n^2-n/2} 1phi1(q^-n; 0; q, -q^{n+3/2} x)"""
    q, x = as_q(q, ctx), ctx.mpf(x)
    z = -q ** (n + ctx.mpf(3) / 2) * x
    return (-1) ** n * q ** (-n * n - ctx.mpf(n) / 2) * eval_phi11(n, 0, q, z, ctx)


def q_laguerre_monic(n: int, x, p, q, ctx: PrecisionContext):
    """
    Monic q-Laguerre S_n(x; p, q) = (-1)^n q^{-n(2n+1)/2} (p;q)_n 1phi1(q^-n; p; q, -q^{n+3/2} x).

    The quadratic factor q^{k^2} of the explicit sum makes this a 1phi1 in the
    lower parameter p; it reduces to the Stieltjes-Wigert case at p = 0.
    """
    q, x, p = as_q(q, ctx), ctx.mpf(x), ctx.mpf(p)
    z = -q ** (n + ctx.mpf(3) / 2) * x
    prefactor = (-1) ** n * q ** (-ctx.mpf(n * (2 * n + 1)) / 2) * qpoch_finite(p, q, n, ctx)
    return prefactor * eval_phi11(n, p, q, z, ctx)


def little_q_laguerre_monic(n: int, x, alpha, q, ctx: PrecisionContext):
    """Monic little q-Laguerre (-1)^n q^{n(n-1)/2} (q^{a+1};q)_n 2phi1(q^-n, 0; q^{a+1}; q, qx)"""
    q, x, alpha = as_q(q, ctx), ctx.mpf(x), ctx.mpf(alpha)
    lower = q ** (alpha + 1)
    prefactor = (-1) ** n * q ** (n * (n - 1) // 2) * qpoch_finite(lower, q, n, ctx)
    return prefactor * eval_phi21(n, lower, q, q * x, ctx)
