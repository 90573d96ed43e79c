"""
Three-term recurrence data: closed forms, polynomial evaluation and the
derived sequences delta_n and 1/gamma_n^2.

Monic polynomials satisfy x P_n = P_{n+1} + b_n P_n + a_n^2 P_{n-1}.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..errors import Unavailable, UnsupportedFamily
from ..special.qseries import as_q
from ..utils.precision import PrecisionContext
from ..utils.serialization import (
    SCHEMA_VERSION,
    decimal_string,
    parse_decimal,
    read_csv,
    read_json,
    write_csv,
    write_json,
)
from ..weights.families import WeightSpec
from ..weights.moments import MomentTable

logger = logging.getLogger(__name__)

SOURCES = ("closed_form", "hankel", "painleve")
CLOSED_FORM_FAMILIES = ("stieltjes_wigert", "q_laguerre", "little_q_laguerre")

CSV_COLUMNS = ("n", "b_n", "a2_n")


@dataclass
class RecurrenceSeq:
    """
    Recurrence coefficients b_0..b_N and a_1^2..a_N^2.

    ``a2[0]`` is ``None``: a_0^2 is absent (it acts as 0 in telescoping sums,
    see :meth:`a_sq`).
    """
    b: List[Any]
    a2: List[Any]
    source: str
    spec: Optional[WeightSpec] = None
    digits: Optional[int] = None

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"Unknown recurrence source: {self.source}")
        if not self.a2 or self.a2[0] is not None:
            self.a2 = [None] + list(self.a2)

    @property
    def N(self) -> int:
        return len(self.b) - 1

    @property
    def depth(self) -> int:
        """Largest n with both b_n and a_n^2 known"""
        return min(len(self.b), len(self.a2)) - 1

    def a_sq(self, n: int):
        """a_n^2 with a_0^2 = 0"""
        if n == 0:
            return 0 * self.b[0]
        return self.a2[n]

    @property
    def positive(self) -> bool:
        return all(a > 0 for a in self.a2[1:])

    def first_nonpositive(self) -> Optional[int]:
        for n, a in enumerate(self.a2[1:], start=1):
            if not a > 0:
                return n
        return None

    def truncated(self, N: int) -> "RecurrenceSeq":
        return RecurrenceSeq(self.b[: N + 1], self.a2[: N + 1], self.source, self.spec, self.digits)

    def rows(self, ctx: PrecisionContext) -> List[Tuple[str, str, str]]:
        digits = self.digits or ctx.digits
        rows = []
        for n in range(max(len(self.b), len(self.a2))):
            b = self.b[n] if n < len(self.b) else None
            a2 = self.a2[n] if n < len(self.a2) else None
            rows.append((str(n), decimal_string(b, digits, ctx.mp), decimal_string(a2, digits, ctx.mp)))
        return rows

    def to_csv(self, ctx: PrecisionContext, path: Optional[Union[str, Path]] = None) -> str:
        return write_csv(CSV_COLUMNS, self.rows(ctx), path)

    def to_dict(self, ctx: PrecisionContext) -> Dict[str, Any]:
        rows = self.rows(ctx)
        return {
            "schema": f"qladder.recurrence/{SCHEMA_VERSION}",
            "source": self.source,
            "weight": self.spec.to_dict() if self.spec else None,
            "precision_digits": self.digits or ctx.digits,
            "b": [row[1] for row in rows if row[1] != ""],
            "a2": [row[2] for row in rows],
        }

    def to_json(self, ctx: PrecisionContext, path: Optional[Union[str, Path]] = None) -> str:
        return write_json(self.to_dict(ctx), path)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any], ctx: PrecisionContext) -> "RecurrenceSeq":
        mp = ctx.with_digits(max(ctx.digits, payload["precision_digits"])).mp
        weight = payload.get("weight")
        return cls(
            b=[parse_decimal(v, mp) for v in payload["b"]],
            a2=[parse_decimal(v, mp) for v in payload["a2"]],
            source=payload["source"],
            spec=WeightSpec.from_dict(weight) if weight else None,
            digits=payload["precision_digits"],
        )

    @classmethod
    def from_json(cls, source: Union[str, Path], ctx: PrecisionContext) -> "RecurrenceSeq":
        return cls.from_dict(read_json(source), ctx)

    @classmethod
    def from_csv(cls, source: Union[str, Path], ctx: PrecisionContext, digits: Optional[int] = None) -> "RecurrenceSeq":
        rows = read_csv(source)
        b = [parse_decimal(row["b_n"], ctx.mp) for row in rows if row["b_n"]]
        a2 = [parse_decimal(row["a2_n"], ctx.mp) for row in rows]
        return cls(b=b, a2=a2, source="hankel", digits=digits or ctx.digits)


@dataclass
class SubleadingSeq:
    """delta_n, the x^{n-1} coefficient of P_n; delta_0 = 0 and delta_n - delta_{n+1} = b_n"""
    delta: List[Any]


def closed_form_recurrence(family: str, n: int, ctx: PrecisionContext, q, p=0, alpha=0):
    """
    (a_n^2, b_n) from the classical closed forms; a_0^2 is returned as None.

    stieltjes_wigert: b_n = q^{-2n-3/2}(1+q-q^{n+1}), a_n^2 = q^{-4n}(1-q^n)
    q_laguerre: b_n = q^{-n-3/2}(-p-q+(1+q)q^{-n}), a_n^2 = q^{-4n}(1-q^n)(1-pq^{n-1})
    little_q_laguerre: b_n = q^n(1+q^a-q^{n+a}(1+q)), a_n^2 = q^{2n+a-1}(1-q^n)(1-q^{n+a})
    """
    if family not in CLOSED_FORM_FAMILIES:
        raise UnsupportedFamily(f"no closed-form recurrence for {family}")
    q = as_q(q, ctx)
    p, alpha = ctx.mpf(p), ctx.mpf(alpha)
    half = ctx.mpf(3) / 2
    if family == "stieltjes_wigert":
        b = q ** (-2 * n - half) * (1 + q - q ** (n + 1))
        a2 = q ** (-4 * n) * (1 - q ** n)
    elif family == "q_laguerre":
        b = q ** (-n - half) * (-p - q + (1 + q) * q ** (-n))
        a2 = q ** (-4 * n) * (1 - q ** n) * (1 - p * q ** (n - 1))
    else:
        b = q ** n * (1 + q ** alpha - q ** (n + alpha) * (1 + q))
        a2 = q ** (2 * n + alpha - 1) * (1 - q ** n) * (1 - q ** (n + alpha))
    return (None if n == 0 else a2), b


def shifted_recurrence(rec: RecurrenceSeq, beta, q, ctx: PrecisionContext) -> RecurrenceSeq:
    """
    Coefficients for the weight w(q^beta x): Q_n(x) = q^{-n beta} P_n(q^beta x)
    has b_n q^{-beta} and a_n^2 q^{-2 beta}.
    """
    scale = as_q(q, ctx) ** (-ctx.mpf(beta))
    b = [ctx.mpf(v) * scale for v in rec.b]
    a2 = [None] + [ctx.mpf(v) * scale * scale for v in rec.a2[1:]]
    return RecurrenceSeq(b, a2, rec.source, rec.spec, rec.digits)


def closed_form_family(spec: WeightSpec) -> str:
    """Classical recurrence family whose coefficients give those of ``spec``"""
    family = spec.family
    if family in ("wigert", "stieltjes_lambda", "askey"):
        return "stieltjes_wigert"
    if family == "chihara":
        return "q_laguerre"
    if family == "little_qlaguerre":
        return "little_q_laguerre"
    raise Unavailable(f"no closed-form recurrence for {family}")


def closed_form_sequence(spec: WeightSpec, N: int, ctx: PrecisionContext) -> RecurrenceSeq:
    """
    b_0..b_N and a_1^2..a_N^2 in closed form.

    Askey's weight has the Stieltjes-Wigert moments of w_k(q^beta x) with
    beta = alpha - 1/2, so its coefficients are the dilated ones.
    """
    family = closed_form_family(spec)
    q = spec.q_at(ctx)
    p = spec.p_at(ctx) if spec.family == "chihara" else 0
    alpha = spec.alpha_at(ctx)
    b, a2 = [], [None]
    for n in range(N + 1):
        a_n, b_n = closed_form_recurrence(family, n, ctx, q, p=p, alpha=alpha)
        b.append(b_n)
        if n:
            a2.append(a_n)
    rec = RecurrenceSeq(b, a2, "closed_form", spec, ctx.digits)
    if spec.family == "askey":
        rec = shifted_recurrence(rec, alpha - ctx.mpf(1) / 2, q, ctx)
    return rec


def eval_polynomial(rec: RecurrenceSeq, n: int, x, ctx: PrecisionContext):
    """Monic P_n(x) by forward recursion from P_{-1} = 0, P_0 = 1"""
    if n > rec.N + 1:
        raise ValueError(f"P_{n} needs b_0..b_{n - 1}; sequence stops at b_{rec.N}")
    x = ctx.mpf(x)
    previous, current = ctx.mpf(0), ctx.mpf(1)
    for k in range(n):
        previous, current = current, (x - rec.b[k]) * current - rec.a_sq(k) * previous
    return current


def polynomial_coefficients(rec: RecurrenceSeq, n: int, ctx: PrecisionContext) -> List[List[Any]]:
    """Ascending coefficient lists of P_0..P_n"""
    polys = [[ctx.mpf(1)]]
    previous: List[Any] = []
    for k in range(n):
        current = polys[-1]
        shifted = [ctx.mpf(0)] + current
        nxt = [
            shifted[i]
            - (rec.b[k] * current[i] if i < len(current) else 0)
            - (rec.a_sq(k) * previous[i] if i < len(previous) else 0)
            for i in range(len(shifted))
        ]
        previous = current
        polys.append(nxt)
    return polys


def subleading_from_b(rec: RecurrenceSeq) -> SubleadingSeq:
    """delta_0 = 0, delta_{n+1} = delta_n - b_n"""
    delta = [0 * rec.b[0]]
    for b in rec.b:
        delta.append(delta[-1] - b)
    return SubleadingSeq(delta)


def gamma_squared(table: MomentTable, rec: RecurrenceSeq, n: int, ctx: PrecisionContext):
    """
    Squared norm 1/gamma_n^2 = int P_n^2 w = mu_0 prod_{j<=n} a_j^2.
    """
    value = ctx.mpf(table.values[0])
    for j in range(1, n + 1):
        value *= rec.a2[j]
    return value


def orthogonality_matrix(table: MomentTable, rec: RecurrenceSeq, n: int, ctx: PrecisionContext) -> List[List[Any]]:
    """
    Gram matrix <P_i, P_j>, 0 <= i, j <= n, through the moment functional.

    Off-diagonal entries vanish for a correct recurrence; the diagonal holds
    :func:`gamma_squared`.
    """
    if 2 * n > table.n_max:
        raise ValueError(f"Gram matrix of order {n} needs moments up to {2 * n}")
    coeffs = polynomial_coefficients(rec, n, ctx)
    mu = [ctx.mpf(v) for v in table.values]
    gram = [[ctx.mpf(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(i, n + 1):
            total = ctx.mpf(0)
            for k, c_k in enumerate(coeffs[i]):
                for l, c_l in enumerate(coeffs[j]):
                    total += c_k * c_l * mu[k + l]
            gram[i][j] = gram[j][i] = total
    return gram
