"""Tests for the precision context and the escalation policy"""

import pytest

from qladder.errors import PrecisionExhausted
from qladder.utils.precision import PrecisionContext, agree, relative_gap, run_escalated


def test_context_is_private():
    low, high = PrecisionContext(digits=20), PrecisionContext(digits=80)
    assert low.dps == 30
    assert high.dps == 90
    assert low.mp is not high.mp


def test_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(digits=3)
    with pytest.raises(ValueError):
        PrecisionContext(digits=30, verify_factor=1.0)


def test_escalated_digits():
    ctx = PrecisionContext(digits=50)
    # ceil(2 * 10^2 * log10(2)) = 61
    assert ctx.escalated(10, 0.5).digits == 111
    assert ctx.verifying().digits == 75


def test_mpf_from_float_uses_repr():
    ctx = PrecisionContext(digits=40)
    assert ctx.mpf(0.1) == ctx.mpf("0.1")


def test_relative_gap():
    ctx = PrecisionContext(digits=30)
    assert relative_gap(ctx.mpf(0), ctx.mpf(0)) == 0
    assert relative_gap(ctx.mpf(2), ctx.mpf(1)) == ctx.mpf("0.5")


def test_agree():
    ctx = PrecisionContext(digits=30)
    ok, gap = agree([ctx.mpf(1), None], [ctx.mpf(1), None], ctx)
    assert ok and gap == 0
    ok, _ = agree([ctx.mpf(1)], [ctx.mpf("1.001")], ctx)
    assert not ok
    ok, _ = agree([ctx.mpf(1)], [ctx.mpf(1), ctx.mpf(2)], ctx)
    assert not ok


def test_run_escalated_returns_verified_result():
    ctx = PrecisionContext(digits=30)
    value, used = run_escalated(lambda work: [work.mp.pi], ctx, 2, 0.5)
    assert used.digits > ctx.digits
    assert ctx.mp.nstr(value[0], 20) == ctx.mp.nstr(ctx.mp.pi, 20)


def test_run_escalated_gives_up():
    ctx = PrecisionContext(digits=30, max_escalations=1)

    def unstable(work):
        # depends on the working precision itself, so never agrees
        return [work.mpf(work.digits)]

    with pytest.raises(PrecisionExhausted):
        run_escalated(unstable, ctx, 1, 0.5)


def test_run_escalated_retries_after_exhaustion():
    ctx = PrecisionContext(digits=30)
    calls = []

    def needs_more(work):
        calls.append(work.digits)
        if work.digits < 60:
            raise PrecisionExhausted("too few digits")
        return [work.mpf(1) / 3]

    value, used = run_escalated(needs_more, ctx, 1, 0.5)
    assert used.digits >= 60
    assert len(calls) > 2
