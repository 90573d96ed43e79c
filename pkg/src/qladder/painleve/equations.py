"""
q-discrete Painleve III and V: the general equations and the three
specialisations satisfied by the recurrence coefficients.

General forms, with x = x_n:

    qp3:  x_{n+1} x_{n-1} = (x+a)(x+b) / ((1+c q^n x)(1+d q^n x))
    qp5:  (x_{n+1} x - 1)(x x_{n-1} - 1)
              = c d q^{2n} (x-a)(x-1/a)(x-b)(x-1/b) / ((x-c q^n)(x-d q^n))

qp3_thm1 is qp3 with a=b=q^-alpha, c=d=q^alpha. qp5_thm3 is qp5 with
a=b=c=d=q^{alpha/2}. qp5_thm2 is qp5 with a=b=c=d=-sqrt(q^{2-alpha}/p) and
q replaced by 1/q.
"""

from typing import Any, Dict, Mapping, Sequence, Tuple

from ..errors import InvalidP, SingularStep
from ..utils.precision import PrecisionContext

THEOREM_VARIANTS = ("qp3_thm1", "qp5_thm2", "qp5_thm3")
GENERAL_VARIANTS = ("qp3_general", "qp5_general")
VARIANTS = THEOREM_VARIANTS + GENERAL_VARIANTS

# weight family whose recurrence coefficients each specialised orbit encodes
VARIANT_FAMILY = {
    "qp3_thm1": "semiclassical_sw",
    "qp5_thm2": "semiclassical_qlaguerre",
    "qp5_thm3": "little_qlaguerre_lattice",
}
FAMILY_VARIANT = {family: variant for variant, family in VARIANT_FAMILY.items()}


def _nonzero(value, scale, ctx: PrecisionContext, what: str):
    """Raise SingularStep when ``value`` is zero relative to ``scale``"""
    if abs(value) <= ctx.eps * (1 + abs(scale)):
        raise SingularStep(f"{what} vanishes ({ctx.mp.nstr(value, 5)})")
    return value


def _check_p(p):
    if p == 0:
        raise InvalidP("p = 0 is the q-P_III case; iterate qp3_thm1 instead")
    if p < 0:
        raise InvalidP(f"p must be positive, got {p}")


def thm2_constants(q, alpha, p, ctx: PrecisionContext) -> Tuple[Any, Any, Any]:
    """
    (sigma, kappa, 1/kappa) with sigma = sqrt(p q^{-2-alpha}) and
    kappa = sqrt(q^{2-alpha}/p); y_n = sigma z_n.
    """
    _check_p(p)
    sqrt = ctx.mp.sqrt
    sigma = sqrt(p * q ** (-2 - alpha))
    kappa = sqrt(q ** (2 - alpha) / p)
    return sigma, kappa, 1 / kappa


def qp3_thm1_step(x_prev, x_cur, n: int, q, alpha, ctx: PrecisionContext):
    """
    x_{n+1} = (x_n + q^-alpha)^2 / ((q^{n+alpha} x_n + 1)^2 x_{n-1})

    Raises:
        SingularStep: x_{n-1} = 0 or q^{n+alpha} x_n + 1 = 0
    """
    if n < 1:
        raise ValueError(f"qp3_thm1_step needs n >= 1, got {n}")
    factor = _nonzero(q ** (n + alpha) * x_cur + 1, 1, ctx, f"1 + q^(n+alpha) x_{n}")
    _nonzero(x_prev, 0, ctx, f"x_{n - 1}")
    return (x_cur + q ** (-alpha)) ** 2 / (factor ** 2 * x_prev)


def _solve_qp5(x_prev, x_cur, rhs, n: int, ctx: PrecisionContext):
    """x_{n+1} from (x_n x_{n+1} - 1)(x_n x_{n-1} - 1) = rhs"""
    left = _nonzero(x_cur * x_prev - 1, 1, ctx, f"x_{n} x_{n - 1} - 1")
    _nonzero(x_cur, 0, ctx, f"x_{n}")
    return (1 + rhs / left) / x_cur


def qp5_thm2_step(z_prev, z_cur, n: int, q, alpha, p, ctx: PrecisionContext):
    """
    z_{n+1} from

        (z_n z_{n-1} - 1)(z_n z_{n+1} - 1)
            = (z_n + kappa)^2 (z_n + 1/kappa)^2 / (q^{n+alpha/2-1} sqrt(p) z_n + 1)^2

    with kappa = sqrt(q^{2-alpha}/p).

    Raises:
        InvalidP: p <= 0
        SingularStep: a denominator vanishes
    """
    if n < 1:
        raise ValueError(f"qp5_thm2_step needs n >= 1, got {n}")
    _, kappa, kappa_inv = thm2_constants(q, alpha, p, ctx)
    den = _nonzero(q ** (n + alpha / 2 - 1) * ctx.mp.sqrt(p) * z_cur + 1, 1, ctx, "q-P_V pole factor")
    rhs = (z_cur + kappa) ** 2 * (z_cur + kappa_inv) ** 2 / den ** 2
    return _solve_qp5(z_prev, z_cur, rhs, n, ctx)


def qp5_thm3_step(x_prev, x_cur, n: int, q, alpha, ctx: PrecisionContext):
    """
    x_{n+1} from

        (x_n x_{n-1} - 1)(x_n x_{n+1} - 1)
            = q^{2n+alpha} (x_n - q^{alpha/2})^2 (x_n - q^{-alpha/2})^2 / (x_n - q^{n+alpha/2})^2

    Raises:
        SingularStep: a denominator vanishes
    """
    if n < 1:
        raise ValueError(f"qp5_thm3_step needs n >= 1, got {n}")
    half = q ** (alpha / 2)
    den = _nonzero(x_cur - q ** n * half, x_cur, ctx, f"x_{n} - q^(n+alpha/2)")
    rhs = q ** (2 * n + alpha) * (x_cur - half) ** 2 * (x_cur - 1 / half) ** 2 / den ** 2
    return _solve_qp5(x_prev, x_cur, rhs, n, ctx)


def general_sides(variant: str, a, b, c, d, q, triple: Sequence, n: int, ctx: PrecisionContext):
    """(LHS, RHS) of the general qp3/qp5 equation on (x_{n-1}, x_n, x_{n+1})"""
    x_prev, x, x_next = triple
    if variant == "qp3_general":
        den = _nonzero((1 + c * q ** n * x) * (1 + d * q ** n * x), 1, ctx, "q-P_III denominator")
        return x_next * x_prev, (x + a) * (x + b) / den
    if variant == "qp5_general":
        _nonzero(a, 0, ctx, "a")
        _nonzero(b, 0, ctx, "b")
        den = _nonzero((x - c * q ** n) * (x - d * q ** n), x * x, ctx, "q-P_V denominator")
        rhs = c * d * q ** (2 * n) * (x - a) * (x - 1 / a) * (x - b) * (x - 1 / b) / den
        return (x_next * x - 1) * (x * x_prev - 1), rhs
    raise ValueError(f"Unknown general variant: {variant}")


def general_residual(variant: str, a, b, c, d, q, triple: Sequence, n: int, ctx: PrecisionContext):
    """
    |LHS - RHS| / (1 + |LHS| + |RHS|) of the general equation.

    Raises:
        SingularStep: a denominator vanishes
    """
    lhs, rhs = general_sides(variant, a, b, c, d, q, triple, n, ctx)
    return abs(lhs - rhs) / (1 + abs(lhs) + abs(rhs))


def general_step(variant: str, a, b, c, d, q, x_prev, x_cur, n: int, ctx: PrecisionContext):
    """Solve the general equation for x_{n+1}"""
    if variant == "qp3_general":
        _nonzero(x_prev, 0, ctx, f"x_{n - 1}")
        _, rhs = general_sides(variant, a, b, c, d, q, (x_prev, x_cur, 0), n, ctx)
        return rhs / x_prev
    _, rhs = general_sides(variant, a, b, c, d, q, (x_prev, x_cur, 0), n, ctx)
    return _solve_qp5(x_prev, x_cur, rhs, n, ctx)


def general_parameters(variant: str, params: Mapping[str, Any], ctx: PrecisionContext) -> Tuple[str, Tuple]:
    """
    The general equation and its (a, b, c, d, q) for a variant.

    Specialised variants read q, alpha (and p) from ``params``; general variants
    read a, b, c, d and q.
    """
    values = {key: ctx.mpf(value) for key, value in params.items() if value is not None}
    q = values["q"]
    if variant in GENERAL_VARIANTS:
        return variant, (values["a"], values["b"], values["c"], values["d"], q)
    alpha = values.get("alpha", ctx.mpf(0))
    if variant == "qp3_thm1":
        return "qp3_general", (q ** -alpha, q ** -alpha, q ** alpha, q ** alpha, q)
    if variant == "qp5_thm2":
        _, kappa, _ = thm2_constants(q, alpha, values.get("p", ctx.mpf(0)), ctx)
        return "qp5_general", (-kappa, -kappa, -kappa, -kappa, 1 / q)
    if variant == "qp5_thm3":
        half = q ** (alpha / 2)
        return "qp5_general", (half, half, half, half, q)
    raise ValueError(f"Unknown Painleve variant: {variant}")


def variant_residual(variant: str, params: Mapping[str, Any], triple: Sequence, n: int, ctx: PrecisionContext):
    """Residual of a triple against the general equation the variant specialises"""
    general, (a, b, c, d, q) = general_parameters(variant, params, ctx)
    return general_residual(general, a, b, c, d, q, triple, n, ctx)


def step(variant: str, params: Dict[str, Any], x_prev, x_cur, n: int, ctx: PrecisionContext):
    """One forward step of any variant"""
    if variant in GENERAL_VARIANTS:
        _, (a, b, c, d, q) = general_parameters(variant, params, ctx)
        return general_step(variant, a, b, c, d, q, x_prev, x_cur, n, ctx)
    q = ctx.mpf(params["q"])
    alpha = ctx.mpf(params.get("alpha", 0))
    if variant == "qp3_thm1":
        return qp3_thm1_step(x_prev, x_cur, n, q, alpha, ctx)
    if variant == "qp5_thm2":
        return qp5_thm2_step(x_prev, x_cur, n, q, alpha, ctx.mpf(params.get("p", 0)), ctx)
    if variant == "qp5_thm3":
        return qp5_thm3_step(x_prev, x_cur, n, q, alpha, ctx)
    raise ValueError(f"Unknown Painleve variant: {variant}")
