"""Tests for the q-series primitives"""

import pytest

from qladder.errors import PoleInLowerParameter, ZeroArgument
from qladder.recurrence.sequences import closed_form_sequence, eval_polynomial
from qladder.special.qseries import (
    QParam,
    as_q,
    dq_difference,
    eval_phi11,
    eval_phi21,
    jackson_qintegral,
    little_q_laguerre_monic,
    q_laguerre_monic,
    q_binomial,
    qpoch_finite,
    qpoch_infinite,
    stieltjes_wigert_monic,
    theta_product,
    theta_sum,
)
from qladder.weights.families import WeightSpec


def test_qparam_rejects_out_of_range():
    for bad in ("0", "1", "1.5", "-0.2"):
        with pytest.raises(ValueError):
            QParam(bad)
    assert float(QParam("0.5")) == 0.5


def test_qpoch_finite(ctx30, close):
    assert close(qpoch_finite("0.5", "0.5", 2, ctx30), "0.375", ctx30)
    assert qpoch_finite("0.7", "0.5", 0, ctx30) == 1
    with pytest.raises(ValueError):
        qpoch_finite("0.5", "0.5", -1, ctx30)


def test_qpoch_infinite_euler(ctx60):
    """(q;q)_inf at q = 1/2 against mpmath's own q-Pochhammer"""
    result = qpoch_infinite("0.5", "0.5", ctx60, eps="1e-40")
    expected = ctx60.mp.qp(ctx60.mpf("0.5"), ctx60.mpf("0.5"))
    assert abs(result.value - expected) < ctx60.mpf("1e-38")
    assert result.tail_bound < ctx60.mpf("1e-39")
    assert ctx60.mp.nstr(result.value, 9) == "0.288788095"


def test_qpoch_infinite_negative_argument(ctx40, close):
    full = qpoch_infinite(-1, "0.5", ctx40).value
    half = qpoch_infinite("-0.5", "0.5", ctx40).value
    assert full > 0
    assert close(full, 2 * half, ctx40)


def test_qpoch_infinite_exact_zero(ctx30):
    """x = q^-1 makes the second factor vanish"""
    result = qpoch_infinite(2, "0.5", ctx30)
    assert result.value == 0
    assert result.tail_bound == 0


def test_theta_product_matches_pochhammers(ctx40, close):
    q = "0.5"
    z = ctx40.mpf("0.75")
    direct = qpoch_infinite(-z, q, ctx40).value * qpoch_infinite(-as_q(q, ctx40) / z, q, ctx40).value
    assert close(theta_product(z, q, ctx40).value, direct, ctx40)


def test_theta_sum_requires_positive_z(ctx30):
    with pytest.raises(ValueError):
        theta_sum(0, "0.5", ctx30)


def test_q_binomial(ctx30, close):
    # [4 choose 2]_q = (1 + q^2)(1 + q + q^2)
    assert close(q_binomial(4, 2, "0.5", ctx30), "2.1875", ctx30)
    assert q_binomial(4, 5, "0.5", ctx30) == 0
    assert close(q_binomial(5, 0, "0.5", ctx30), 1, ctx30)


def test_dq_difference(ctx30, close):
    assert close(dq_difference(lambda x: x * x, 2, "0.5", ctx30), 3, ctx30)
    with pytest.raises(ZeroArgument):
        dq_difference(lambda x: x, 0, "0.5", ctx30)


def test_jackson_qintegral(ctx40, close):
    value = jackson_qintegral(lambda x: x * x, "0.5", ctx40)
    assert close(value, ctx40.mpf(4) / 7, ctx40, tol="1e-35")


def _phi11_brute(n, b, q, z, ctx):
    total = ctx.mpf(0)
    for k in range(n + 1):
        total += (
            qpoch_finite(q ** -n, q, k, ctx)
            / (qpoch_finite(q, q, k, ctx) * qpoch_finite(b, q, k, ctx))
            * (-1) ** k * q ** (k * (k - 1) // 2) * z ** k
        )
    return total


def _phi21_brute(n, a2, b, q, z, ctx):
    total = ctx.mpf(0)
    for k in range(n + 1):
        total += (
            qpoch_finite(q ** -n, q, k, ctx) * qpoch_finite(a2, q, k, ctx)
            / (qpoch_finite(q, q, k, ctx) * qpoch_finite(b, q, k, ctx))
            * z ** k
        )
    return total


@pytest.mark.parametrize("n", [0, 1, 3, 5])
def test_phi11_against_series(ctx40, close, n):
    q, b, z = ctx40.mpf("0.5"), ctx40.mpf("0.3"), ctx40.mpf("-1.7")
    assert close(eval_phi11(n, b, q, z, ctx40), _phi11_brute(n, b, q, z, ctx40), ctx40, tol="1e-30")


@pytest.mark.parametrize("n", [0, 2, 4])
def test_phi21_against_series(ctx40, close, n):
    q, a2, b, z = ctx40.mpf("0.6"), ctx40.mpf("0.2"), ctx40.mpf("0.25"), ctx40.mpf("0.9")
    assert close(eval_phi21(n, b, q, z, ctx40, a2=a2), _phi21_brute(n, a2, b, q, z, ctx40), ctx40, tol="1e-30")


def test_phi11_pole_in_lower_parameter(ctx30):
    q = ctx30.mpf("0.5")
    with pytest.raises(PoleInLowerParameter):
        eval_phi11(3, 1 / q, q, 1, ctx30)


def test_stieltjes_wigert_monic_matches_recurrence(ctx40, close):
    spec = WeightSpec("wigert", q="0.5")
    rec = closed_form_sequence(spec, 4, ctx40)
    for x in ("0.3", "1", "2.5"):
        assert close(stieltjes_wigert_monic(3, x, "0.5", ctx40), eval_polynomial(rec, 3, x, ctx40), ctx40, tol="1e-30")


def test_little_q_laguerre_monic_matches_recurrence(ctx40, close):
    spec = WeightSpec("little_qlaguerre", q="0.5", alpha="1")
    rec = closed_form_sequence(spec, 4, ctx40)
    for x in ("0.2", "0.9"):
        assert close(little_q_laguerre_monic(3, x, 1, "0.5", ctx40), eval_polynomial(rec, 3, x, ctx40), ctx40, tol="1e-30")


def test_q_laguerre_monic_matches_recurrence(ctx40, close):
    spec = WeightSpec("chihara", q="0.5", p="0.25")
    rec = closed_form_sequence(spec, 4, ctx40)
    for x in ("0.3", "1", "2.5"):
        assert close(q_laguerre_monic(3, x, "0.25", "0.5", ctx40), eval_polynomial(rec, 3, x, ctx40), ctx40, tol="1e-30")
    # p = 0 is the Stieltjes-Wigert polynomial
    assert close(q_laguerre_monic(3, "1", 0, "0.5", ctx40), stieltjes_wigert_monic(3, "1", "0.5", ctx40), ctx40)
