"""
Painleve orbits: forward iteration, initial values from moments, and the maps
between orbits and recurrence coefficients.

qp3_thm1 (semiclassical Stieltjes-Wigert weight, q-P_III):
    x_n = q^{n-1} a_n^2 - q^{-n-alpha},  x_0 = -q^-alpha,  x_1 = -b_0^2
qp5_thm2 (semiclassical q-Laguerre weight, q-P_V with q -> 1/q):
    sigma z_n = q^{n-1} a_n^2 - q^{-n-alpha},  sigma = sqrt(p q^{-2-alpha})
qp5_thm3 (little q-Laguerre lattice weight, q-P_V):
    x_n = q^{alpha/2} (a_n^2 q^{1-n-alpha} + q^n),  x_0 = q^{alpha/2}
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..errors import NegativeSquare, PrecisionExhausted, SingularStep
from ..recurrence.sequences import RecurrenceSeq
from ..utils.precision import PrecisionContext, relative_gap, run_escalated
from ..utils.serialization import (
    SCHEMA_VERSION,
    decimal_string,
    parse_decimal,
    read_json,
    write_csv,
    write_json,
)
from ..weights.families import WeightSpec
from ..weights.moments import MomentTable, build_moment_table
from .equations import (
    FAMILY_VARIANT,
    THEOREM_VARIANTS,
    VARIANT_FAMILY,
    VARIANTS,
    step,
    thm2_constants,
    variant_residual,
)

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("n", "x_n", "residual")


def _raw(value):
    if isinstance(value, float):
        return repr(value)
    return value if value is None or isinstance(value, (int, str)) else str(value)


@dataclass
class PainleveOrbit:
    """
    x_0..x_M of one Painleve variant.

    ``residuals[n]`` is the residual of the general equation at interior
    index n (None at the ends). ``truncated`` names the reason when the
    iteration stopped before the requested depth.
    """
    variant: str
    params: Dict[str, Any]
    x: List[Any]
    residuals: List[Any] = field(default_factory=list)
    tolerance: Any = None
    truncated: Optional[str] = None
    digits: Optional[int] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"Unknown Painleve variant: {self.variant}")
        self.params = {key: _raw(value) for key, value in self.params.items()}

    def __len__(self):
        return len(self.x)

    @property
    def max_residual(self):
        interior = [r for r in self.residuals if r is not None]
        return max(interior) if interior else None

    def weight(self) -> WeightSpec:
        """Weight whose recurrence coefficients this orbit encodes"""
        if self.variant not in THEOREM_VARIANTS:
            raise ValueError(f"{self.variant} is not tied to a weight")
        return WeightSpec(family=VARIANT_FAMILY[self.variant], **self.params)

    def rows(self, ctx: PrecisionContext) -> List[Tuple[str, str, str]]:
        digits = self.digits or ctx.digits
        rows = []
        for n, x in enumerate(self.x):
            residual = self.residuals[n] if n < len(self.residuals) else None
            rows.append((str(n), decimal_string(x, digits, ctx.mp), decimal_string(residual, 5, ctx.mp)))
        return rows

    def to_csv(self, ctx: PrecisionContext, path: Optional[Union[str, Path]] = None) -> str:
        return write_csv(CSV_COLUMNS, self.rows(ctx), path)

    def to_dict(self, ctx: PrecisionContext) -> Dict[str, Any]:
        rows = self.rows(ctx)
        return {
            "schema": f"qladder.orbit/{SCHEMA_VERSION}",
            "variant": self.variant,
            "params": {key: str(value) for key, value in self.params.items() if value is not None},
            "precision_digits": self.digits or ctx.digits,
            "tolerance": decimal_string(self.tolerance, 5, ctx.mp),
            "truncated": self.truncated,
            "x": [row[1] for row in rows],
            "residuals": [row[2] for row in rows],
        }

    def to_json(self, ctx: PrecisionContext, path: Optional[Union[str, Path]] = None) -> str:
        return write_json(self.to_dict(ctx), path)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any], ctx: PrecisionContext) -> "PainleveOrbit":
        mp = ctx.with_digits(max(ctx.digits, payload["precision_digits"])).mp
        return cls(
            variant=payload["variant"],
            params=dict(payload["params"]),
            x=[parse_decimal(v, mp) for v in payload["x"]],
            residuals=[parse_decimal(v, mp) for v in payload["residuals"]],
            tolerance=parse_decimal(payload["tolerance"], mp),
            truncated=payload.get("truncated"),
            digits=payload["precision_digits"],
        )

    @classmethod
    def from_json(cls, source: Union[str, Path], ctx: PrecisionContext) -> "PainleveOrbit":
        return cls.from_dict(read_json(source), ctx)


def orbit_params(spec: WeightSpec) -> Dict[str, Any]:
    params = {"q": spec.q, "alpha": spec.alpha}
    if spec.family == "semiclassical_qlaguerre":
        params["p"] = spec.p
    return params


def _residuals(variant: str, params: Dict[str, Any], x: List[Any], ctx: PrecisionContext) -> List[Any]:
    residuals = [None] * len(x)
    for n in range(1, len(x) - 1):
        try:
            residuals[n] = variant_residual(variant, params, x[n - 1 : n + 2], n, ctx)
        except SingularStep:
            residuals[n] = ctx.mp.inf
    return residuals


def iterate_orbit(
    variant: str,
    params: Dict[str, Any],
    x0,
    x1,
    N: int,
    ctx: PrecisionContext,
    tolerance=None,
) -> PainleveOrbit:
    """
    Forward iteration x_0, x_1 -> x_0..x_N.

    A SingularStep, or a step whose residual exceeds ``tolerance``, ends the
    orbit early; the reason is kept in ``truncated``.
    """
    tolerance = ctx.tol if tolerance is None else ctx.mpf(tolerance)
    x = [ctx.mpf(x0), ctx.mpf(x1)]
    residuals: List[Any] = [None, None]
    truncated = None
    for n in range(1, N):
        try:
            x_next = step(variant, params, x[n - 1], x[n], n, ctx)
            residual = variant_residual(variant, params, (x[n - 1], x[n], x_next), n, ctx)
        except SingularStep as exc:
            truncated = f"SingularStep at n={n}: {exc}"
            break
        if residual > tolerance:
            truncated = f"residual {ctx.mp.nstr(residual, 3)} above tolerance at n={n}"
            break
        residuals[n] = residual
        x.append(x_next)
        residuals.append(None)
    if truncated:
        logger.warning(f"{variant} orbit truncated at length {len(x)}: {truncated}")
    return PainleveOrbit(variant, params, x[: N + 1], residuals[: N + 1], tolerance, truncated, ctx.digits)


def _first_moments(spec: WeightSpec, ctx: PrecisionContext, table: Optional[MomentTable], count: int):
    if table is None:
        table = build_moment_table(spec, count - 1, ctx)
    return [ctx.mpf(v) for v in table.values[:count]]


def thm1_initial(spec: WeightSpec, ctx: PrecisionContext, table: Optional[MomentTable] = None):
    """x_0 = -q^-alpha, x_1 = -b_0^2 with b_0 = mu_1/mu_0"""
    mu0, mu1 = _first_moments(spec, ctx, table, 2)
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    b0 = mu1 / mu0
    return -(q ** -alpha), -b0 * b0


def thm2_initial(spec: WeightSpec, ctx: PrecisionContext, table: Optional[MomentTable] = None):
    """
    z_0 = -sqrt(q^{2-alpha}/p),
    z_1 = (mu_2 mu_0 - mu_1^2 - mu_0^2 q^{-alpha-1}) / (mu_0^2 sqrt(p q^{-alpha-2}))
    """
    mu0, mu1, mu2 = _first_moments(spec, ctx, table, 3)
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    sigma, kappa, _ = thm2_constants(q, alpha, spec.p_at(ctx), ctx)
    return -kappa, (mu2 * mu0 - mu1 * mu1 - mu0 * mu0 * q ** (-alpha - 1)) / (mu0 * mu0 * sigma)


def thm3_initial(spec: WeightSpec, ctx: PrecisionContext, table: Optional[MomentTable] = None):
    """x_0 = q^{alpha/2}, x_1 = q^{-alpha/2}(1 - mu_1^2/mu_0^2)"""
    mu0, mu1 = _first_moments(spec, ctx, table, 2)
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    return q ** (alpha / 2), q ** (-alpha / 2) * (1 - (mu1 / mu0) ** 2)


INITIAL_VALUES = {"qp3_thm1": thm1_initial, "qp5_thm2": thm2_initial, "qp5_thm3": thm3_initial}


def _orbit_value(orbit: PainleveOrbit, n: int, ctx: PrecisionContext):
    if n >= len(orbit.x):
        raise IndexError(f"orbit has {len(orbit.x)} entries, index {n} requested")
    return ctx.mpf(orbit.x[n])


def _certain_square(value, n: int, ctx: PrecisionContext):
    if value < 0:
        raise NegativeSquare(f"b_{n}^2 = {ctx.mp.nstr(value, 5)} from the orbit")
    return value


def thm1_coeffs_from_orbit(orbit: PainleveOrbit, n: int, ctx: PrecisionContext):
    """
    a_n^2 = q^{1-n} x_n + q^{1-2n-alpha} and b_n^2 from

        q^{2n+alpha} b_n^2 x_n = x_{n+1} + q^{2n+2alpha} x_{n-1}(x_n + q^{-n-alpha})^2 + 2(x_n + q^-alpha)

    At n = 0, b_0^2 = -x_1.
    """
    q, alpha = ctx.mpf(orbit.params["q"]), ctx.mpf(orbit.params["alpha"])
    x = _orbit_value(orbit, n, ctx)
    a2 = q ** (1 - n) * x + q ** (1 - 2 * n - alpha)
    if n == 0:
        return a2, _certain_square(-_orbit_value(orbit, 1, ctx), 0, ctx)
    if not x:
        raise SingularStep(f"x_{n} = 0")
    x_prev, x_next = _orbit_value(orbit, n - 1, ctx), _orbit_value(orbit, n + 1, ctx)
    rhs = x_next + q ** (2 * n + 2 * alpha) * x_prev * (x + q ** (-n - alpha)) ** 2 + 2 * (x + q ** -alpha)
    return a2, _certain_square(rhs / (q ** (2 * n + alpha) * x), n, ctx)


def thm2_coeffs_from_orbit(orbit: PainleveOrbit, n: int, ctx: PrecisionContext):
    """
    a_n^2 = q^{1-n} sigma z_n + q^{1-2n-alpha} and b_n^2 from

        b_n^2 q^{2n+alpha} z_n^2 = z_n z_{n+1} - 1
            + q^{2n+2alpha} (sigma z_n + q^{-n-alpha})^2 (z_n z_{n-1} - 1)
            + 2 (z_n + kappa)(z_n + 1/kappa)

    At n = 0, b_0^2 = -(sigma z_1 + p q^-2).
    """
    q, alpha, p = (ctx.mpf(orbit.params[key]) for key in ("q", "alpha", "p"))
    sigma, kappa, kappa_inv = thm2_constants(q, alpha, p, ctx)
    z = _orbit_value(orbit, n, ctx)
    a2 = q ** (1 - n) * sigma * z + q ** (1 - 2 * n - alpha)
    if n == 0:
        return a2, _certain_square(-(sigma * _orbit_value(orbit, 1, ctx) + p / (q * q)), 0, ctx)
    if not z:
        raise SingularStep(f"z_{n} = 0")
    z_prev, z_next = _orbit_value(orbit, n - 1, ctx), _orbit_value(orbit, n + 1, ctx)
    rhs = (
        z * z_next
        - 1
        + q ** (2 * n + 2 * alpha) * (sigma * z + q ** (-n - alpha)) ** 2 * (z * z_prev - 1)
        + 2 * (z + kappa) * (z + kappa_inv)
    )
    return a2, _certain_square(rhs / (q ** (2 * n + alpha) * z * z), n, ctx)


def thm3_coeffs_from_orbit(orbit: PainleveOrbit, n: int, ctx: PrecisionContext, mu0=None, mu1=None):
    """
    a_n^2 = q^{n+alpha/2-1}(x_n - q^{n+alpha/2}) and b_n^2 from

        b_n^2 x_n^2 q^{-2n-alpha} = 1 - x_n x_{n+1}
            - q^{-2n} (x_n x_{n-1} - 1)(x_n q^{-alpha/2} - q^n)^2
            - 2 (x_n - q^{alpha/2})(x_n - q^{-alpha/2})

    At n = 0, b_0^2 = 1 - q^{alpha/2} x_1, or mu_1^2/mu_0^2 when both moments
    are given.
    """
    q, alpha = ctx.mpf(orbit.params["q"]), ctx.mpf(orbit.params["alpha"])
    half = q ** (alpha / 2)
    x = _orbit_value(orbit, n, ctx)
    a2 = q ** (n - 1) * half * (x - q ** n * half)
    if n == 0:
        if mu0 is not None and mu1 is not None:
            return a2, (ctx.mpf(mu1) / ctx.mpf(mu0)) ** 2
        return a2, _certain_square(1 - half * _orbit_value(orbit, 1, ctx), 0, ctx)
    if not x:
        raise SingularStep(f"x_{n} = 0")
    x_prev, x_next = _orbit_value(orbit, n - 1, ctx), _orbit_value(orbit, n + 1, ctx)
    rhs = (
        1
        - x * x_next
        - q ** (-2 * n) * (x * x_prev - 1) * (x / half - q ** n) ** 2
        - 2 * (x - half) * (x - 1 / half)
    )
    return a2, _certain_square(rhs / (x * x * q ** (-2 * n - alpha)), n, ctx)


COEFFS_FROM_ORBIT = {
    "qp3_thm1": thm1_coeffs_from_orbit,
    "qp5_thm2": thm2_coeffs_from_orbit,
    "qp5_thm3": thm3_coeffs_from_orbit,
}


def coefficients_from_orbit(orbit: PainleveOrbit, ctx: PrecisionContext) -> RecurrenceSeq:
    """
    RecurrenceSeq from a specialised orbit; b_n is the positive root of b_n^2.

    x_0..x_M give a_1^2..a_M^2 and b_0..b_{M-1}.
    """
    mapper = COEFFS_FROM_ORBIT.get(orbit.variant)
    if mapper is None:
        raise ValueError(f"no coefficient map for {orbit.variant}")
    b, a2 = [], [None]
    for n in range(len(orbit.x)):
        if n + 1 < len(orbit.x):
            a_n, b_sq = mapper(orbit, n, ctx)
            b.append(ctx.mp.sqrt(b_sq))
        else:
            a_n = _a_only(orbit, n, ctx)
        if n:
            a2.append(a_n)
    spec = orbit.weight()
    return RecurrenceSeq(b, a2, "painleve", spec, orbit.digits)


def _a_only(orbit: PainleveOrbit, n: int, ctx: PrecisionContext):
    """a_n^2 from x_n alone (the last orbit entry has no x_{n+1})"""
    q, alpha = ctx.mpf(orbit.params["q"]), ctx.mpf(orbit.params["alpha"])
    x = _orbit_value(orbit, n, ctx)
    if orbit.variant == "qp3_thm1":
        return q ** (1 - n) * x + q ** (1 - 2 * n - alpha)
    if orbit.variant == "qp5_thm2":
        sigma, _, _ = thm2_constants(q, alpha, ctx.mpf(orbit.params["p"]), ctx)
        return q ** (1 - n) * sigma * x + q ** (1 - 2 * n - alpha)
    half = q ** (alpha / 2)
    return q ** (n - 1) * half * (x - q ** n * half)


def orbit_from_recurrence(
    rec: RecurrenceSeq,
    variant: str,
    ctx: PrecisionContext,
    params: Optional[Dict[str, Any]] = None,
) -> PainleveOrbit:
    """
    Orbit x_0..x_N from a_0^2..a_N^2 (a_0^2 = 0), with per-index residuals
    against the variant's equation. Residuals are recorded, not enforced.
    """
    if variant not in THEOREM_VARIANTS:
        raise ValueError(f"orbit_from_recurrence needs a specialised variant, got {variant}")
    if params is None:
        if rec.spec is None:
            raise ValueError("params are required when the recurrence carries no weight")
        params = orbit_params(rec.spec)
    q = ctx.mpf(params["q"])
    alpha = ctx.mpf(params.get("alpha", 0))
    if variant == "qp5_thm2":
        sigma, _, _ = thm2_constants(q, alpha, ctx.mpf(params["p"]), ctx)
    x = []
    for n in range(len(rec.a2)):
        a2 = ctx.mpf(rec.a_sq(n))
        if variant == "qp3_thm1":
            x.append(q ** (n - 1) * a2 - q ** (-n - alpha))
        elif variant == "qp5_thm2":
            x.append((q ** (n - 1) * a2 - q ** (-n - alpha)) / sigma)
        else:
            x.append(q ** (alpha / 2) * (a2 * q ** (1 - n - alpha) + q ** n))
    residuals = _residuals(variant, params, x, ctx)
    return PainleveOrbit(variant, params, x, residuals, None, None, rec.digits or ctx.digits)


def thm2_to_thm1(orbit: PainleveOrbit, ctx: PrecisionContext) -> List[Any]:
    """x_n = z_n sqrt(p) q^{-1-alpha/2}; tends to the qp3_thm1 orbit as p -> 0"""
    if orbit.variant != "qp5_thm2":
        raise ValueError(f"expected a qp5_thm2 orbit, got {orbit.variant}")
    q, alpha, p = (ctx.mpf(orbit.params[key]) for key in ("q", "alpha", "p"))
    scale = ctx.mp.sqrt(p) * q ** (-1 - alpha / 2)
    return [scale * ctx.mpf(z) for z in orbit.x]


@dataclass
class Certification:
    """Entrywise comparison of an iterated orbit with the moment route"""
    variant: str
    gaps: List[Any]
    tol: Any
    first_failure: Optional[int]

    @property
    def max_gap(self):
        return max(self.gaps) if self.gaps else None

    @property
    def passed(self) -> bool:
        return self.first_failure is None


def certify_orbit(orbit: PainleveOrbit, reference: PainleveOrbit, ctx: PrecisionContext, tol=None) -> Certification:
    """Relative gap |x_n - x_n^ref| per index over the common length"""
    tol = ctx.tol if tol is None else ctx.mpf(tol)
    gaps, first_failure = [], None
    for n, (x, ref) in enumerate(zip(orbit.x, reference.x)):
        gap = relative_gap(ctx.mpf(x), ctx.mpf(ref))
        gaps.append(gap)
        if first_failure is None and gap > tol:
            first_failure = n
    if first_failure is not None:
        logger.warning(
            f"{orbit.variant}: orbit leaves the moment route at n={first_failure} "
            f"(gap {ctx.mp.nstr(gaps[first_failure], 3)})"
        )
    return Certification(orbit.variant, gaps, tol, first_failure)


def theorem_orbit(spec: WeightSpec, N: int, ctx: PrecisionContext, method: str = "auto") -> PainleveOrbit:
    """
    Initial values from moments, then forward iteration to x_N, under the
    escalation policy (both the moments and the iteration lose about
    N^2 log10(1/q) digits).
    """
    variant = FAMILY_VARIANT.get(spec.family)
    if variant is None:
        raise ValueError(f"no Painleve orbit for {spec.family}")
    params = orbit_params(spec)
    initial = INITIAL_VALUES[variant]

    def compute(work: PrecisionContext) -> PainleveOrbit:
        table = build_moment_table(spec, 2, work, method=method)
        x0, x1 = initial(spec, work, table)
        orbit = iterate_orbit(variant, params, x0, x1, N, work, tolerance=work.tol)
        if orbit.truncated:
            raise PrecisionExhausted(orbit.truncated)
        return orbit

    orbit, used = run_escalated(compute, ctx, N, spec.q_float(), values=lambda o: o.x)
    logger.info(f"{variant}: x_0..x_{N} certified to {ctx.digits} digits (computed at {used.digits})")
    orbit.digits = ctx.digits
    return orbit
