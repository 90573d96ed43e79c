"""
Moment tables: closed forms, quadrature, lattice sums and the exact Pearson
shift between moments of the semiclassical weights.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..errors import DomainError, NoConvergence, Unavailable, UnsupportedFamily
from ..special.qseries import qpoch_infinite
from ..utils.precision import PrecisionContext
from ..utils.serialization import (
    SCHEMA_VERSION,
    decimal_strings,
    parse_decimal,
    read_json,
    write_json,
)
from .families import CONTINUOUS_FAMILIES, WeightSpec, weight_function
from .quadrature import integrate_moments

logger = logging.getLogger(__name__)

METHODS = ("closed_form", "closed_form_ratio", "quadrature", "lattice", "pearson")
TABLE_METHODS = ("auto", "closed_form", "quadrature", "lattice", "pearson")

# decay rate (in t = log x) demanded of the left tail at the quadrature seed
SEED_DECAY = 10


@dataclass
class MomentEstimate:
    value: Any
    error_bound: Any
    method: str


@dataclass
class ClosedFormMoment:
    """Closed-form moment; ``is_ratio`` marks m_n/m_0 rather than an absolute value"""
    value: Any
    is_ratio: bool = False


def moments_closed_form(spec: WeightSpec, n: int, ctx: PrecisionContext) -> ClosedFormMoment:
    """
    Closed-form moment of order ``n``.

    wigert q^{-(n+1)^2/2}; stieltjes_lambda e^{(n+1)^2/4}; askey the ratio
    q^{-n(alpha+1)-n(n-1)/2}; chihara q^{-(n+1)^2/2}/(p q^n; q)_inf;
    little_qlaguerre_lattice (1-q)(q^2;q^2)_inf/(q^{n+alpha+1};q^2)_inf;
    little_qlaguerre (1-q)(q;q)_inf/(q^{n+alpha+1};q)_inf.

    Raises:
        Unavailable: for the continuous semiclassical families
    """
    if n < 0:
        raise ValueError(f"moment order must be nonnegative, got {n}")
    mp = ctx.mp
    family = spec.family
    if family == "stieltjes_lambda":
        return ClosedFormMoment(mp.exp(ctx.mpf((n + 1) ** 2) / 4))
    q = spec.q_at(ctx)
    if family == "wigert":
        return ClosedFormMoment(q ** (-ctx.mpf((n + 1) ** 2) / 2))
    alpha = spec.alpha_at(ctx)
    if family == "askey":
        return ClosedFormMoment(q ** (-n * (alpha + 1) - ctx.mpf(n * (n - 1)) / 2), is_ratio=True)
    if family == "chihara":
        p = spec.p_at(ctx)
        return ClosedFormMoment(q ** (-ctx.mpf((n + 1) ** 2) / 2) / qpoch_infinite(p * q ** n, q, ctx).value)
    if family == "little_qlaguerre_lattice":
        Q = q * q
        return ClosedFormMoment(
            (1 - q) * qpoch_infinite(Q, Q, ctx).value / qpoch_infinite(q ** (n + alpha + 1), Q, ctx).value
        )
    if family == "little_qlaguerre":
        return ClosedFormMoment(
            (1 - q) * qpoch_infinite(q, q, ctx).value / qpoch_infinite(q ** (n + alpha + 1), q, ctx).value
        )
    raise Unavailable(f"no closed-form moments for {family}")


def left_decay_rate(spec: WeightSpec, n: int) -> Optional[float]:
    """
    Exponential rate of x^{n+1} w(x) as t = log x -> -inf, or None when the
    decay is faster than any exponential.

    Only the semiclassical q-Laguerre weight with p > 0 has a power-law edge:
    w(x) ~ x^{alpha - 2 + log p / log q} near 0 for the base-q^2 factor. The
    base-q factor overwhelms the theta decay, so that weight is not integrable.
    """
    if spec.family != "semiclassical_qlaguerre" or float(spec.p) == 0:
        return None
    if spec.p_base == "q":
        return float("-inf")
    return n + float(spec.alpha) - 1 + math.log(float(spec.p)) / math.log(float(spec.q))


def check_moment_exists(spec: WeightSpec, n: int):
    """
    Raises:
        DomainError: when the n-th moment integral diverges at 0
    """
    rate = left_decay_rate(spec, n)
    if rate is not None and rate <= 0:
        if spec.p_base == "q":
            raise DomainError("the base-q semiclassical q-Laguerre weight is not integrable near 0")
        raise DomainError(
            f"moment {n} diverges at 0 for p={spec.p}; moments need p < q^(1-alpha)"
        )


def _log_integrand(spec: WeightSpec, ctx: PrecisionContext):
    """g(t) = w(e^t) e^t, the integrand of the zeroth moment after x = e^t"""
    mp = ctx.mp
    w = weight_function(spec, ctx)
    return lambda t: w(mp.exp(t)) * mp.exp(t)


def quadrature_moments(
    spec: WeightSpec,
    orders: Sequence[int],
    ctx: PrecisionContext,
    tol=None,
    rule: str = "trapezoid",
) -> List[MomentEstimate]:
    """Several moments of a continuous family from one sweep of quadrature nodes"""
    if spec.family not in CONTINUOUS_FAMILIES:
        raise UnsupportedFamily(f"quadrature needs a continuous family, got {spec.family}")
    for n in orders:
        check_moment_exists(spec, n)
    result = integrate_moments(_log_integrand(spec, ctx), orders, ctx, rule=rule, tol=tol)
    logger.debug(f"{spec.family}: orders {list(orders)} by {rule} on {result.nodes} nodes")
    return [MomentEstimate(v, e, "quadrature") for v, e in zip(result.values, result.error_bounds)]


def moments_quadrature(
    spec: WeightSpec,
    n: int,
    ctx: PrecisionContext,
    tol=None,
    rule: str = "trapezoid",
) -> MomentEstimate:
    """
    Moment of order ``n`` by quadrature in t = log x.

    Raises:
        NoConvergence: tolerance not reached
        DomainError: divergent moment
    """
    return quadrature_moments(spec, [n], ctx, tol=tol, rule=rule)[0]


def moments_lattice(spec: WeightSpec, n: int, ctx: PrecisionContext, tol=None, max_terms: int = 1_000_000) -> MomentEstimate:
    """
    Lattice moment (1-q) sum_k q^{k(n+alpha+1)} P_k with P_k = (q^{2k+2};q^2)_inf
    (or (q^{k+1};q)_inf for the classical weight), summed until the geometric
    tail q^{K s}/(1 - q^s), s = n + alpha + 1, falls below ``tol`` relative.
    """
    if not spec.is_lattice:
        raise UnsupportedFamily(f"lattice sums need a lattice family, got {spec.family}")
    if n < 0:
        raise ValueError(f"moment order must be nonnegative, got {n}")
    tol = ctx.tol if tol is None else ctx.mpf(tol)
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    semiclassical = spec.family == "little_qlaguerre_lattice"
    base = q * q if semiclassical else q
    step = base

    ratio = q ** (n + alpha + 1)
    product = qpoch_infinite(step, base, ctx).value
    power = ctx.mpf(1)
    total = ctx.mpf(0)
    for k in range(max_terms):
        total += power * product
        # P_{k+1} = P_k / (1 - step^{k+1})
        product /= 1 - step * base ** k
        power *= ratio
        tail = power / (1 - ratio)
        if tail < tol * total:
            value = (1 - q) * total
            return MomentEstimate(value, (1 - q) * tail, "lattice")
    raise NoConvergence(f"lattice sum for moment {n} did not converge in {max_terms} terms")


def pearson_stride(spec: WeightSpec) -> int:
    """Index step of the exact moment recursion"""
    return 1 if spec.family == "little_qlaguerre" else 2


def pearson_ratio(spec: WeightSpec, n: int, ctx: PrecisionContext):
    """
    mu_{n+s} / mu_n from the Pearson relation, s = :func:`pearson_stride`.

    semiclassical weights: q^{-n-1-alpha} - p q^{-2} (p = 0 for the
    Stieltjes-Wigert case); lattice weight: 1 - q^{n+alpha+1}; classical
    little q-Laguerre: 1 - q^{n+alpha+1} with stride 1.
    """
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    if spec.family == "semiclassical_sw":
        return q ** (-n - 1 - alpha)
    if spec.family == "semiclassical_qlaguerre":
        if spec.p_base != "q2":
            raise Unavailable("no exact moment shift for the base-q weight")
        return q ** (-n - 1 - alpha) - spec.p_at(ctx) / (q * q)
    if spec.is_lattice:
        return 1 - q ** (n + alpha + 1)
    raise Unavailable(f"no Pearson moment shift for {spec.family}")


def seed_order(spec: WeightSpec) -> int:
    """Smallest even order whose quadrature integrand decays fast enough at 0"""
    rate = left_decay_rate(spec, 0)
    if rate is None:
        return 0
    s = 0
    while left_decay_rate(spec, s) < SEED_DECAY:
        s += 2
    return s


@dataclass
class MomentTable:
    """
    mu_0 .. mu_{L-1} with per-entry error bounds and provenance.

    A table of 2N+2 entries yields b_0..b_N and a_1^2..a_N^2.
    """
    spec: WeightSpec
    digits: int
    values: List[Any]
    error_bounds: List[Any]
    methods: List[str]

    def __len__(self):
        return len(self.values)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def hankel_determinant(self, order: int, ctx: PrecisionContext):
        """det[mu_{i+j}]_{0 <= i, j <= order}"""
        if 2 * order > self.n_max:
            raise ValueError(f"Hankel order {order} needs moments up to {2 * order}")
        mp = ctx.mp
        matrix = mp.matrix(order + 1, order + 1)
        for i in range(order + 1):
            for j in range(order + 1):
                matrix[i, j] = ctx.mpf(self.values[i + j])
        return mp.det(matrix)

    def hankel_minors(self, ctx: PrecisionContext, max_order: Optional[int] = None) -> List[Any]:
        top = self.n_max // 2 if max_order is None else max_order
        return [self.hankel_determinant(k, ctx) for k in range(top + 1)]

    def is_positive_definite(self, ctx: PrecisionContext, max_order: Optional[int] = None) -> bool:
        even_ok = all(v > 0 for v in self.values[::2])
        return even_ok and all(d > 0 for d in self.hankel_minors(ctx, max_order))

    def to_dict(self, ctx: PrecisionContext) -> Dict[str, Any]:
        mp = ctx.mp
        return {
            "schema": f"qladder.moments/{SCHEMA_VERSION}",
            "family": self.spec.family,
            "params": self.spec.params(),
            "precision_digits": self.digits,
            "values": decimal_strings(self.values, self.digits, mp),
            "error_bounds": decimal_strings(self.error_bounds, 5, mp),
            "methods": list(self.methods),
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any], ctx: PrecisionContext) -> "MomentTable":
        if ctx.digits < payload["precision_digits"]:
            ctx = ctx.with_digits(payload["precision_digits"])
        spec = WeightSpec(family=payload["family"], **payload["params"])
        return cls(
            spec=spec,
            digits=payload["precision_digits"],
            values=[parse_decimal(v, ctx.mp) for v in payload["values"]],
            error_bounds=[parse_decimal(v, ctx.mp) for v in payload["error_bounds"]],
            methods=list(payload.get("methods", ["closed_form"] * len(payload["values"]))),
        )

    def to_json(self, ctx: PrecisionContext, path: Optional[Union[str, Path]] = None) -> str:
        return write_json(self.to_dict(ctx), path)

    @classmethod
    def from_json(cls, source: Union[str, Path], ctx: PrecisionContext) -> "MomentTable":
        return cls.from_dict(read_json(source), ctx)


def _closed_form_table(spec: WeightSpec, n_max: int, ctx: PrecisionContext):
    values, bounds, methods = [], [], []
    if spec.family == "askey":
        m0 = moments_quadrature(spec, 0, ctx)
        rel = m0.error_bound / m0.value
        for n in range(n_max + 1):
            value = m0.value * moments_closed_form(spec, n, ctx).value
            values.append(value)
            bounds.append(abs(value) * (rel + ctx.eps * (n + 2)))
            methods.append("closed_form_ratio")
        return values, bounds, methods
    for n in range(n_max + 1):
        value = moments_closed_form(spec, n, ctx).value
        values.append(value)
        bounds.append(abs(value) * ctx.eps * (n + 2))
        methods.append("closed_form")
    return values, bounds, methods


def _pearson_table(spec: WeightSpec, n_max: int, ctx: PrecisionContext):
    """Seed moments by quadrature (or lattice sums), the rest by the exact shift"""
    stride = pearson_stride(spec)
    if spec.is_lattice:
        s = 0
        seeds = [moments_lattice(spec, n, ctx) for n in range(stride)]
    else:
        s = seed_order(spec)
        seeds = quadrature_moments(spec, list(range(s, s + stride)), ctx)
    top = max(n_max, s + stride - 1)

    values: Dict[int, Any] = {}
    rel: Dict[int, Any] = {}
    for offset, seed in enumerate(seeds):
        values[s + offset] = seed.value
        rel[offset] = seed.error_bound / abs(seed.value)
    for n in range(s, top + 1 - stride):
        values[n + stride] = values[n] * pearson_ratio(spec, n, ctx)
    for n in range(s - 1, -1, -1):
        values[n] = values[n + stride] / pearson_ratio(spec, n, ctx)
    if s:
        logger.info(f"{spec.family}: quadrature seeds at orders {s}..{s + stride - 1}, shifted to 0..{n_max}")

    table_values = [values[n] for n in range(n_max + 1)]
    bounds = [
        abs(v) * (rel[(n - s) % stride] + ctx.eps * (abs(n - s) + 2))
        for n, v in enumerate(table_values)
    ]
    return table_values, bounds, ["pearson"] * (n_max + 1)


def default_method(spec: WeightSpec) -> str:
    if spec.family in ("semiclassical_sw", "semiclassical_qlaguerre"):
        return "pearson" if spec.p_base == "q2" else "quadrature"
    return "closed_form"


def build_moment_table(
    spec: WeightSpec,
    n_max: int,
    ctx: PrecisionContext,
    method: str = "auto",
    rule: str = "trapezoid",
) -> MomentTable:
    """
    Table mu_0..mu_{n_max}.

    Args:
        spec: Weight
        n_max: Highest moment order
        ctx: Working precision
        method: 'auto', 'closed_form', 'quadrature', 'lattice' or 'pearson'
        rule: Quadrature rule for quadrature-based entries
    """
    if method not in TABLE_METHODS:
        raise ValueError(f"Unknown moment method: {method}")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    if method == "auto":
        method = default_method(spec)

    if method == "closed_form":
        values, bounds, methods = _closed_form_table(spec, n_max, ctx)
    elif method == "pearson":
        values, bounds, methods = _pearson_table(spec, n_max, ctx)
    elif method == "lattice":
        estimates = [moments_lattice(spec, n, ctx) for n in range(n_max + 1)]
        values = [e.value for e in estimates]
        bounds = [e.error_bound for e in estimates]
        methods = ["lattice"] * (n_max + 1)
    else:
        estimates = quadrature_moments(spec, list(range(n_max + 1)), ctx, rule=rule)
        values = [e.value for e in estimates]
        bounds = [e.error_bound for e in estimates]
        methods = ["quadrature"] * (n_max + 1)

    logger.debug(f"{spec.family}: {n_max + 1} moments by {method} at {ctx.digits} digits")
    return MomentTable(spec, ctx.digits, values, bounds, methods)
