"""
Moment quadrature on the half line after the substitution x = e^t.

Every continuous family here is log-normal-like, so the t-integrand is smooth
and decays at least exponentially on both sides. A doubling trapezoid rule
then converges geometrically; ``mpmath.quad`` (tanh-sinh) serves as the
independent second rule.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, List, Sequence, Tuple

from ..errors import NoConvergence
from ..utils.precision import PrecisionContext

logger = logging.getLogger(__name__)

RULES = ("trapezoid", "tanh-sinh")

# endpoint integrand must drop below tol * TAIL_MARGIN relative to its peak
TAIL_MARGIN = 10 ** -5


@dataclass
class QuadratureResult:
    """Integrals of g(t) e^{n t} for each requested order n"""
    orders: List[int]
    values: List[Any]
    error_bounds: List[Any]
    interval: Tuple[Any, Any]
    nodes: int
    rule: str


def _order_values(g_t, e_t, orders):
    return [g_t * e_t ** n for n in orders]


def find_interval(
    g: Callable,
    orders: Sequence[int],
    ctx: PrecisionContext,
    tol,
    center=0,
    step=1,
    max_extent: int = 100_000,
):
    """
    Scan outward from ``center`` in unit steps until, on each side and for
    every order, the integrand is below ``tol * 1e-5`` of its running peak and
    still decreasing.

    Returns:
        (left end, right end, tail estimates per order)
    """
    mp = ctx.mp
    center = ctx.mpf(center)
    start = _order_values(g(center), mp.exp(center), orders)
    peaks = [abs(v) for v in start]
    threshold = tol * TAIL_MARGIN
    ends, tails = [], [ctx.mpf(0)] * len(orders)

    for direction in (-1, 1):
        previous = start
        t = center
        for _ in range(max_extent):
            t += direction * step
            current = _order_values(g(t), mp.exp(t), orders)
            peaks = [max(pk, abs(v)) for pk, v in zip(peaks, current)]
            done = all(
                abs(v) <= threshold * pk and abs(v) < abs(prev)
                for v, prev, pk in zip(current, previous, peaks)
            )
            if done:
                for i, (v, prev) in enumerate(zip(current, previous)):
                    # exponential envelope through the last two samples
                    rate = mp.log(abs(prev) / abs(v)) if v else mp.inf
                    tails[i] += abs(v) / rate if rate > 0 else abs(v)
                ends.append(t)
                break
            previous = current
        else:
            raise NoConvergence(f"integrand tail not established within |t| <= {max_extent}")
    return ends[0], ends[1], tails


def trapezoid_moments(
    g: Callable,
    orders: Sequence[int],
    ctx: PrecisionContext,
    tol=None,
    center=0,
    h0="0.5",
    max_levels: int = 16,
) -> QuadratureResult:
    """
    Doubling trapezoid rule for int g(t) e^{n t} dt, all orders at once.

    ``g`` is evaluated once per node; the step is halved until every order
    changes by less than ``tol`` relative to its value.

    Raises:
        NoConvergence: tolerance not met after ``max_levels`` halvings
    """
    mp = ctx.mp
    orders = list(orders)
    tol = ctx.tol if tol is None else ctx.mpf(tol)
    a, b, tails = find_interval(g, orders, ctx, tol, center)

    panels = int(mp.ceil((b - a) / ctx.mpf(h0)))
    h = (b - a) / panels
    sums = [ctx.mpf(0)] * len(orders)
    for j in range(panels + 1):
        t = a + j * h
        weight = ctx.mpf(1) / 2 if j in (0, panels) else 1
        vals = _order_values(g(t), mp.exp(t), orders)
        sums = [s + weight * v for s, v in zip(sums, vals)]
    estimates = [h * s for s in sums]
    nodes = panels + 1

    for level in range(1, max_levels + 1):
        mids = [ctx.mpf(0)] * len(orders)
        for j in range(panels):
            t = a + (j + ctx.mpf(1) / 2) * h
            vals = _order_values(g(t), mp.exp(t), orders)
            mids = [m + v for m, v in zip(mids, vals)]
        nodes += panels
        panels *= 2
        h /= 2
        refined = [e / 2 + h * m for e, m in zip(estimates, mids)]
        gaps = [abs(r - e) for r, e in zip(refined, estimates)]
        estimates = refined
        if level >= 2 and all(gap <= tol * abs(r) for gap, r in zip(gaps, refined)):
            logger.debug(f"trapezoid converged: level {level}, {nodes} nodes on [{a}, {b}]")
            bounds = [gap + tail for gap, tail in zip(gaps, tails)]
            return QuadratureResult(orders, estimates, bounds, (a, b), nodes, "trapezoid")

    raise NoConvergence(f"trapezoid rule did not reach tol after {max_levels} halvings")


def tanh_sinh_moments(
    g: Callable,
    orders: Sequence[int],
    ctx: PrecisionContext,
    tol=None,
    center=0,
) -> QuadratureResult:
    """Same integrals through ``mpmath.quad`` on the interval found by :func:`find_interval`"""
    mp = ctx.mp
    orders = list(orders)
    tol = ctx.tol if tol is None else ctx.mpf(tol)
    a, b, tails = find_interval(g, orders, ctx, tol, center)
    # unit panels keep each tanh-sinh piece well resolved
    points = [a + j for j in range(int(b - a))] + [b]

    values, bounds = [], []
    for n, tail in zip(orders, tails):
        value, error = mp.quad(lambda t: g(t) * mp.exp(n * t), points, error=True)
        values.append(value)
        bounds.append(error + tail)
    return QuadratureResult(orders, values, bounds, (a, b), 0, "tanh-sinh")


def integrate_moments(g: Callable, orders: Sequence[int], ctx: PrecisionContext, rule="trapezoid", tol=None, center=0):
    """Dispatch to one of :data:`RULES`"""
    if rule == "trapezoid":
        return trapezoid_moments(g, orders, ctx, tol=tol, center=center)
    if rule == "tanh-sinh":
        return tanh_sinh_moments(g, orders, ctx, tol=tol, center=center)
    raise ValueError(f"Unknown quadrature rule: {rule}")
