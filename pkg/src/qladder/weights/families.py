"""
Weight families, their potentials and the Pearson-type relations.

Continuous families live on (0, inf); the lattice families are evaluated
pointwise but are only meaningful on {q^k : k >= 0}.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Sequence

from ..errors import DomainError, Unavailable, UnsupportedFamily
from ..special.qseries import QParam, qpoch_infinite, theta_sum
from ..utils.precision import PrecisionContext

logger = logging.getLogger(__name__)

CONTINUOUS_FAMILIES = (
    "stieltjes_lambda",
    "wigert",
    "askey",
    "chihara",
    "semiclassical_sw",
    "semiclassical_qlaguerre",
)
LATTICE_FAMILIES = ("little_qlaguerre_lattice", "little_qlaguerre")
FAMILIES = CONTINUOUS_FAMILIES + LATTICE_FAMILIES

SEMICLASSICAL_FAMILIES = ("semiclassical_sw", "semiclassical_qlaguerre", "little_qlaguerre_lattice")

# base of the (-p/x^2; .)_inf factor of the semiclassical q-Laguerre weight
P_BASES = ("q2", "q")


def _raw(value):
    """Keep decimal strings exact; floats become their shortest repr"""
    if isinstance(value, float):
        return repr(value)
    return value


@dataclass(frozen=True)
class WeightSpec:
    """
    Tagged weight family with its parameters.

    Args:
        family: One of :data:`FAMILIES`
        q: Base, 0 < q < 1 (derived from k for wigert/chihara when omitted)
        alpha: Exponent of the x^alpha factor
        p: Extra parameter of chihara and semiclassical_qlaguerre
        k: Wigert scale, q = exp(-1/(2k^2))
        lam: Stieltjes lambda in [-1, 1]
        p_base: 'q2' or 'q', base of the (-p/x^2; .)_inf factor
    """
    family: str
    q: Any = None
    alpha: Any = 0
    p: Any = 0
    k: Any = None
    lam: Any = 0
    p_base: str = "q2"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"Unknown weight family: {self.family}")
        for name in ("q", "alpha", "p", "k", "lam"):
            object.__setattr__(self, name, _raw(getattr(self, name)))
        if self.p_base not in P_BASES:
            raise ValueError(f"p_base must be one of {P_BASES}, got {self.p_base!r}")

        family = self.family
        if family == "stieltjes_lambda":
            if self.k is not None and float(self.k) != 1:
                raise DomainError("stieltjes_lambda is normalised with k = 1")
            if not -1 <= float(self.lam) <= 1:
                raise DomainError(f"lambda must lie in [-1, 1], got {self.lam}")
        elif family in ("wigert", "chihara") and self.k is not None:
            if float(self.k) <= 0:
                raise DomainError(f"k must be positive, got {self.k}")
        elif self.q is None:
            raise DomainError(f"{family} needs q")
        if self.q is not None:
            QParam(self.q)

        alpha, p = float(self.alpha), float(self.p)
        if family == "chihara" and not 0 <= p < 1:
            raise DomainError(f"chihara needs 0 <= p < 1, got {self.p}")
        if family == "semiclassical_qlaguerre":
            if alpha < 0:
                raise DomainError(f"semiclassical_qlaguerre needs alpha >= 0, got {self.alpha}")
            if not 0 <= p < float(self.q) ** (-alpha):
                raise DomainError(f"semiclassical_qlaguerre needs 0 <= p < q^-alpha, got {self.p}")
        if family == "little_qlaguerre_lattice" and alpha <= 0:
            raise DomainError(f"little_qlaguerre_lattice needs alpha > 0, got {self.alpha}")
        if family == "little_qlaguerre" and alpha <= -1:
            raise DomainError(f"little_qlaguerre needs alpha > -1, got {self.alpha}")

    @property
    def is_lattice(self) -> bool:
        return self.family in LATTICE_FAMILIES

    def q_at(self, ctx: PrecisionContext):
        """Base q in ``ctx``; checks q against exp(-1/(2k^2)) when both are given"""
        mp = ctx.mp
        if self.family == "stieltjes_lambda":
            return mp.exp(-ctx.mpf(1) / 2)
        if self.family in ("wigert", "chihara") and self.k is not None:
            k = ctx.mpf(self.k)
            q = mp.exp(-1 / (2 * k * k))
            if self.q is not None and abs(q - ctx.mpf(self.q)) > ctx.tol * q:
                raise DomainError(f"q={self.q} is inconsistent with k={self.k}")
            return q
        return ctx.mpf(self.q)

    def k_at(self, ctx: PrecisionContext):
        """Wigert scale k = 1/sqrt(2 log(1/q))"""
        if self.k is not None:
            return ctx.mpf(self.k)
        if self.family == "stieltjes_lambda":
            return ctx.mpf(1)
        return 1 / ctx.mp.sqrt(-2 * ctx.mp.log(self.q_at(ctx)))

    def alpha_at(self, ctx: PrecisionContext):
        return ctx.mpf(self.alpha)

    def p_at(self, ctx: PrecisionContext):
        return ctx.mpf(self.p)

    def lam_at(self, ctx: PrecisionContext):
        return ctx.mpf(self.lam)

    def q_float(self) -> float:
        """Double-precision q, enough to size precision escalation"""
        if self.family == "stieltjes_lambda":
            return 0.6065306597126334
        if self.q is None:
            return math.exp(-1 / (2 * float(self.k) ** 2))
        return float(self.q)

    def params(self) -> Dict[str, Any]:
        """Parameters relevant to the family, as strings"""
        keys = {
            "stieltjes_lambda": ("lam",),
            "wigert": ("q", "k"),
            "askey": ("q", "alpha"),
            "chihara": ("q", "k", "p"),
            "semiclassical_sw": ("q", "alpha"),
            "semiclassical_qlaguerre": ("q", "alpha", "p", "p_base"),
            "little_qlaguerre_lattice": ("q", "alpha"),
            "little_qlaguerre": ("q", "alpha"),
        }[self.family]
        return {key: str(getattr(self, key)) for key in keys if getattr(self, key) is not None}

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family, **self.params()}

    @classmethod
    def from_dict(cls, spec_dict: Dict[str, Any]):
        return cls(**spec_dict)


def weight_function(spec: WeightSpec, ctx: PrecisionContext, eps=None) -> Callable:
    """
    Pointwise evaluator x -> w(x) with the family constants precomputed.

    Theta-type denominators (-z; Q)_inf (-Q/z; Q)_inf are evaluated through the
    triple product, sum_k Q^{k(k-1)/2} z^k / (Q; Q)_inf.
    """
    mp = ctx.mp
    eps = ctx.eps if eps is None else ctx.mpf(eps)
    q = spec.q_at(ctx)
    alpha = spec.alpha_at(ctx)
    family = spec.family

    if family in ("stieltjes_lambda", "wigert", "chihara"):
        k = spec.k_at(ctx)
        norm = k / mp.sqrt(mp.pi)
        lam = spec.lam_at(ctx) if family == "stieltjes_lambda" else 0
        p = spec.p_at(ctx) if family == "chihara" else 0
        sqrt_q = mp.sqrt(q)

        def w(x):
            log_x = mp.log(x)
            value = norm * mp.exp(-(k * log_x) ** 2)
            if lam:
                value *= 1 + lam * mp.sin(2 * mp.pi * log_x)
            if p:
                value *= qpoch_infinite(-p / (sqrt_q * x), q, ctx, eps).value
            return value

        return w

    if family == "askey":
        euler = qpoch_infinite(q, q, ctx, eps).value

        def w(x):
            return x ** alpha * euler / theta_sum(x, q, ctx, eps).value

        return w

    if family in ("semiclassical_sw", "semiclassical_qlaguerre"):
        Q = q * q
        euler = qpoch_infinite(Q, Q, ctx, eps).value
        p = spec.p_at(ctx) if family == "semiclassical_qlaguerre" else 0
        p_base = Q if spec.p_base == "q2" else q

        def w(x):
            x2 = x * x
            value = x ** alpha * euler / theta_sum(x2, Q, ctx, eps).value
            if p:
                value *= qpoch_infinite(-p / x2, p_base, ctx, eps).value
            return value

        return w

    if family == "little_qlaguerre_lattice":
        Q = q * q

        def w(x):
            return x ** alpha * qpoch_infinite(Q * x * x, Q, ctx, eps).value

        return w

    def w(x):
        return x ** alpha * qpoch_infinite(q * x, q, ctx, eps).value

    return w


def eval_weight(spec: WeightSpec, x, ctx: PrecisionContext, eps=None):
    """
    Evaluate the weight at x > 0.

    Raises:
        DomainError: for x <= 0
    """
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError(f"weights are evaluated at x > 0, got {x}")
    return weight_function(spec, ctx, eps)(x)


def potential(spec: WeightSpec, x, ctx: PrecisionContext, shifted: bool = False):
    """
    Closed-form potential u(x) = -D_{q^-1} w(x) / w(x).

    With ``shifted=True`` returns u(qx), the form in which the lattice
    potential is naturally written.

    Raises:
        UnsupportedFamily: outside the three semiclassical families
        Unavailable: semiclassical_qlaguerre with p_base 'q' (no Pearson relation)
    """
    if spec.family not in SEMICLASSICAL_FAMILIES:
        raise UnsupportedFamily(f"no closed-form potential for {spec.family}")
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError(f"potential is evaluated at x > 0, got {x}")
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    y = q * x if shifted else x
    c = q ** (2 - alpha)

    if spec.family == "semiclassical_sw":
        return q / (1 - q) * (1 / y - c / y ** 3)
    if spec.family == "semiclassical_qlaguerre":
        if spec.p_base != "q2":
            raise Unavailable("closed-form potential needs the base-q^2 weight")
        p = spec.p_at(ctx)
        return q / (1 - q) * (1 / y - c / (y * (p + y * y)))
    return (q * (1 - q ** (-alpha)) / y + q ** (1 - alpha) * y) / (1 - q)


def numeric_potential(spec: WeightSpec, x, ctx: PrecisionContext, shifted: bool = False):
    """u(y) = q (1 - w(y/q)/w(y)) / (y (1 - q)) straight from the weight"""
    x = ctx.mpf(x)
    q = spec.q_at(ctx)
    y = q * x if shifted else x
    w = weight_function(spec, ctx)
    return q * (1 - w(y / q) / w(y)) / (y * (1 - q))


@dataclass
class PearsonReport:
    """Residuals of the Pearson-type relation at the sampled points"""
    family: str
    p_base: str
    samples: List[Any]
    residuals: List[Any]
    max_residual: Any
    tol: Any
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(self.max_residual <= self.tol)


def check_pearson(
    spec: WeightSpec,
    samples: Sequence,
    ctx: PrecisionContext,
    tol=None,
) -> PearsonReport:
    """
    Relative residuals of w(x/q) = q^{2-alpha} w(x)/x^2 (semiclassical_sw) or
    w(x)/(p + x^2) = w(x/q)/q^{2-alpha} (semiclassical_qlaguerre).
    """
    if spec.family not in ("semiclassical_sw", "semiclassical_qlaguerre"):
        raise UnsupportedFamily(f"no Pearson relation is checked for {spec.family}")
    tol = ctx.tol if tol is None else ctx.mpf(tol)
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    c = q ** (2 - alpha)
    w = weight_function(spec, ctx)

    residuals = []
    for x in samples:
        x = ctx.mpf(x)
        if spec.family == "semiclassical_sw":
            lhs, rhs = w(x / q), c * w(x) / x ** 2
        else:
            lhs, rhs = w(x) / (spec.p_at(ctx) + x ** 2), w(x / q) / c
        residuals.append(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    worst = max(residuals) if residuals else ctx.mpf(0)
    return PearsonReport(spec.family, spec.p_base, [ctx.mpf(x) for x in samples], residuals, worst, tol)


def pearson_bases(spec: WeightSpec, samples: Sequence, ctx: PrecisionContext, tol=None) -> Dict[str, PearsonReport]:
    """Run :func:`check_pearson` for both bases of the semiclassical q-Laguerre factor"""
    if spec.family != "semiclassical_qlaguerre":
        raise UnsupportedFamily("base comparison only applies to semiclassical_qlaguerre")
    reports = {}
    for base in P_BASES:
        variant = replace(spec, p_base=base)
        reports[base] = check_pearson(variant, samples, ctx, tol)
        logger.info(
            f"p_base={base}: Pearson residual {ctx.mp.nstr(reports[base].max_residual, 3)} "
            f"({'satisfied' if reports[base].passed else 'violated'})"
        )
    return reports
