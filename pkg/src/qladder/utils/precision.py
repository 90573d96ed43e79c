"""Working precision and the escalation policy.

Every numerical routine receives a :class:`PrecisionContext` and computes with
its private ``mpmath.MPContext``; nothing reads or writes the global
``mpmath.mp``.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Iterable, List, Optional, Tuple, TypeVar

import mpmath

from ..errors import PrecisionExhausted

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class PrecisionContext:
    """
    Decimal working precision plus the policy used for ill-conditioned steps.

    Args:
        digits: Target number of correct decimal digits
        escalation_c: Constant c in ``digits + ceil(c * N^2 * log10(1/q))``
        verify_factor: Recompute at this multiple of the digits to verify
        max_escalations: Extra attempts before giving up
        guard_digits: Digits carried beyond ``digits`` in every operation
    """
    digits: int = 50
    escalation_c: float = 2.0
    verify_factor: float = 1.5
    max_escalations: int = 3
    guard_digits: int = 10
    mp: Any = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.digits < 5:
            raise ValueError(f"digits must be at least 5, got {self.digits}")
        if self.verify_factor <= 1:
            raise ValueError(f"verify_factor must exceed 1, got {self.verify_factor}")
        self.mp = mpmath.MPContext()
        self.mp.dps = self.digits + self.guard_digits

    @property
    def dps(self) -> int:
        return self.mp.dps

    @property
    def tol(self):
        """Relative tolerance 10^-digits"""
        return self.mp.mpf(10) ** (-self.digits)

    @property
    def eps(self):
        """Machine epsilon of the working context"""
        return self.mp.eps

    def mpf(self, x):
        """Convert ``x`` (str, int, float, Fraction or foreign mpf) into this context"""
        if isinstance(x, float):
            x = repr(x)
        return self.mp.mpf(x)

    def nstr(self, x) -> str:
        """Decimal string with ``digits`` significant digits"""
        return self.mp.nstr(x, self.digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return replace(self, digits=int(digits))

    def escalated(self, n: int, q) -> "PrecisionContext":
        """Context for depth-``n`` work at base ``q``: moments grow like q^{-n^2/2}"""
        log_inv_q = -math.log10(float(q))
        extra = math.ceil(self.escalation_c * n * n * log_inv_q)
        return self.with_digits(self.digits + extra)

    def verifying(self) -> "PrecisionContext":
        return self.with_digits(math.ceil(self.digits * self.verify_factor))


def relative_gap(a, b):
    """|a - b| / max(|a|, |b|), zero when both vanish"""
    scale = max(abs(a), abs(b))
    if not scale:
        return scale
    return abs(a - b) / scale


def agree(first: Iterable, second: Iterable, ctx: PrecisionContext) -> Tuple[bool, Any]:
    """Check two value sequences agree to ``ctx.tol``; returns (ok, worst gap)"""
    worst = ctx.mpf(0)
    first, second = list(first), list(second)
    if len(first) != len(second):
        return False, ctx.mpf(1)
    for a, b in zip(first, second):
        if a is None or b is None:
            if a is not b:
                return False, ctx.mpf(1)
            continue
        gap = relative_gap(ctx.mpf(a), ctx.mpf(b))
        worst = max(worst, gap)
    return worst <= ctx.tol, worst


def run_escalated(
    fn: Callable[[PrecisionContext], T],
    ctx: PrecisionContext,
    n: int,
    q,
    values: Optional[Callable[[T], List]] = None,
) -> Tuple[T, PrecisionContext]:
    """
    Run ``fn`` under the escalation policy.

    ``fn`` is evaluated at the escalated precision and again at
    ``verify_factor`` times those digits. The verified result is returned once
    both agree to ``ctx.tol``; otherwise the digits are raised and the pair is
    recomputed, at most ``ctx.max_escalations`` more times.

    Args:
        fn: Computation parameterised by its precision context
        ctx: Base context (target accuracy)
        n: Depth driving the escalation
        q: Base of the q-family
        values: Extracts the comparable numbers from a result (default: identity)

    Returns:
        (result at the verifying precision, context it was computed in)
    """
    values = values or (lambda result: result)
    work = ctx.escalated(n, q)
    for attempt in range(ctx.max_escalations + 1):
        check_ctx = work.verifying()
        try:
            first = fn(work)
            second = fn(check_ctx)
        except PrecisionExhausted as exc:
            logger.info(f"attempt {attempt}: {exc}; raising digits above {work.digits}")
            work = check_ctx
            continue
        ok, gap = agree(values(first), values(second), ctx)
        if ok:
            logger.debug(f"verified at {work.digits}/{check_ctx.digits} digits (gap {ctx.mp.nstr(gap, 3)})")
            return second, check_ctx
        logger.info(
            f"attempt {attempt}: {work.digits} and {check_ctx.digits} digits disagree "
            f"(gap {ctx.mp.nstr(gap, 3)}); escalating"
        )
        work = check_ctx
    raise PrecisionExhausted(
        f"no agreement to {ctx.digits} digits after {ctx.max_escalations} escalations"
    )
