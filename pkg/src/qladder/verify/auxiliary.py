"""
Auxiliary sequences of the ladder-operator derivation.

Semiclassical Stieltjes-Wigert (s3) and q-Laguerre (s4) weights:
    T_n = q^{n-1} (delta_n - q delta_{n+1}),  r_n = q^{n-1} (1-q) delta_n
    t_n solved from a_n^2 q^{2n-1} = A(1-q^n) + q^n t_n                    (s3)
    t_n solved from a_n^2 q^{2n-1} = (A+c)(1-q^n) - c(1-q^{2n}) + q^n t_n   (s4)
    y_n = t_n - A - c + c q^n
Little q-Laguerre lattice weight (s5):
    r_n solved from a_n^2 = q^{n+alpha-1} (r_n + 1 - q^n)
    R_n solved from b_n q^{-n-alpha+1} = R_n + (q-1) sum_{j<=n} R_j

with A = q^-alpha and c = p q^-2.
"""

from dataclasses import dataclass, field
from typing import Any, List, Optional

from ..errors import UnsupportedFamily
from ..recurrence.sequences import RecurrenceSeq, SubleadingSeq, subleading_from_b
from ..utils.precision import PrecisionContext
from ..weights.families import WeightSpec

SECTIONS = {
    "semiclassical_sw": "s3",
    "semiclassical_qlaguerre": "s4",
    "little_qlaguerre_lattice": "s5",
}


@dataclass
class AuxSeq:
    """t_n, r_n, T_n, R_n, y_n; sequences a section does not use stay empty"""
    section: str
    q: Any
    alpha: Any
    p: Any
    t: List[Any] = field(default_factory=list)
    r: List[Any] = field(default_factory=list)
    T: List[Any] = field(default_factory=list)
    R: List[Any] = field(default_factory=list)
    y: List[Any] = field(default_factory=list)
    delta: List[Any] = field(default_factory=list)
    initial_residual: Any = 0

    @property
    def A(self):
        return self.q ** -self.alpha

    @property
    def c(self):
        return self.p / (self.q * self.q)

    @property
    def depth(self) -> int:
        return len(self.R if self.section == "s5" else self.T) - 1


def section_for(spec: WeightSpec) -> str:
    section = SECTIONS.get(spec.family)
    if section is None:
        raise UnsupportedFamily(f"no ladder identities for {spec.family}")
    return section


def aux_from_delta(
    rec: RecurrenceSeq,
    deltas: Optional[SubleadingSeq],
    ctx: PrecisionContext,
    spec: Optional[WeightSpec] = None,
) -> AuxSeq:
    """
    Build the auxiliary sequences for n = 0..N from b_0..b_N, a_1^2..a_N^2
    and delta_0..delta_{N+1}.

    ``initial_residual`` records |t_0| + |r_0|, which must vanish.
    """
    spec = spec or rec.spec
    if spec is None:
        raise ValueError("aux_from_delta needs the weight of the recurrence")
    section = section_for(spec)
    deltas = deltas or subleading_from_b(rec)
    q, alpha = spec.q_at(ctx), spec.alpha_at(ctx)
    p = spec.p_at(ctx) if section == "s4" else ctx.mpf(0)
    aux = AuxSeq(section, q, alpha, p, delta=[ctx.mpf(d) for d in deltas.delta])
    N = min(rec.depth, len(deltas.delta) - 2)
    A, c = aux.A, aux.c

    if section == "s5":
        running = ctx.mpf(0)
        for n in range(N + 1):
            a2 = ctx.mpf(rec.a_sq(n))
            aux.r.append(a2 * q ** (1 - n - alpha) - 1 + q ** n)
            R = (ctx.mpf(rec.b[n]) * q ** (1 - n - alpha) - (q - 1) * running) / q
            aux.R.append(R)
            running += R
        aux.initial_residual = abs(aux.r[0])
        return aux

    delta = aux.delta
    for n in range(N + 1):
        a2 = ctx.mpf(rec.a_sq(n))
        aux.T.append(q ** (n - 1) * (delta[n] - q * delta[n + 1]))
        aux.r.append(q ** (n - 1) * (1 - q) * delta[n])
        t = a2 * q ** (2 * n - 1) - (A + c) * (1 - q ** n) + c * (1 - q ** (2 * n))
        aux.t.append(t / q ** n)
        aux.y.append(aux.t[-1] - A - c + c * q ** n)
    aux.r.append(q ** N * (1 - q) * delta[N + 1])
    aux.initial_residual = abs(aux.t[0]) + abs(aux.r[0])
    return aux


def t_by_recursion(aux: AuxSeq, rec: RecurrenceSeq, ctx: PrecisionContext) -> List[Any]:
    """t_0 = 0, t_{n+1} = A - t_n - b_n T_n - c(q^n + q^{n+1} - 1)"""
    q, A, c = aux.q, aux.A, aux.c
    t = [ctx.mpf(0)]
    for n in range(len(aux.T) - 1):
        t.append(A - t[n] - ctx.mpf(rec.b[n]) * aux.T[n] - c * (q ** n + q ** (n + 1) - 1))
    return t


def r_by_recursion(aux: AuxSeq, rec: RecurrenceSeq, ctx: PrecisionContext) -> List[Any]:
    """r_0 = 0, r_{n+1} = -b_n R_n - (1 - A) - r_n"""
    r = [ctx.mpf(0)]
    for n in range(len(aux.R) - 1):
        r.append(-ctx.mpf(rec.b[n]) * aux.R[n] - (1 - aux.A) - r[n])
    return r


def R_by_recursion(aux: AuxSeq, rec: RecurrenceSeq, ctx: PrecisionContext) -> List[Any]:
    """R_n = -(r_{n+1} + r_n + 1 - A) / b_n"""
    return [
        -(aux.r[n + 1] + aux.r[n] + 1 - aux.A) / ctx.mpf(rec.b[n])
        for n in range(len(aux.r) - 1)
    ]

