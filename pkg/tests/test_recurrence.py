"""Tests for recurrence extraction and the closed forms"""

import pytest

from qladder.errors import PrecisionExhausted, Unavailable, UnsupportedFamily
from qladder.recurrence import (
    RecurrenceSeq,
    closed_form_recurrence,
    closed_form_sequence,
    eval_polynomial,
    gamma_squared,
    orthogonality_matrix,
    polynomial_coefficients,
    recurrence_escalated,
    recurrence_from_moments,
    shifted_recurrence,
    subleading_from_b,
)
from qladder.recurrence.sequences import closed_form_family
from qladder.weights.families import WeightSpec
from qladder.weights.moments import MomentTable, build_moment_table


def test_wigert_values(ctx40, close):
    rec = recurrence_escalated(WeightSpec("wigert", q="0.5"), 3, ctx40)
    assert rec.source == "hankel"
    assert close(rec.b[0], ctx40.mpf(2) ** ctx40.mpf("1.5"), ctx40)
    assert close(rec.a2[1], 8, ctx40)
    assert close(rec.a2[2], 192, ctx40)


def test_chihara_first_coefficient(ctx40, close):
    rec = recurrence_escalated(WeightSpec("chihara", q="0.5", p="0.25"), 2, ctx40)
    assert close(rec.a2[1], 6, ctx40)


def test_little_q_laguerre_values(ctx40, close):
    rec = recurrence_escalated(WeightSpec("little_qlaguerre", q="0.5", alpha="1"), 2, ctx40)
    assert close(rec.b[0], "0.75", ctx40)
    assert close(rec.a2[1], ctx40.mpf(3) / 32, ctx40)
    assert close(rec.b[1], "0.5625", ctx40)


@pytest.mark.parametrize(
    "spec",
    [
        WeightSpec("wigert", q="0.8"),
        WeightSpec("chihara", q="0.5", p="0.25"),
        WeightSpec("askey", q="0.5", alpha="0.5"),
        WeightSpec("little_qlaguerre", q="0.5", alpha="0.5"),
    ],
    ids=lambda spec: spec.family,
)
def test_hankel_matches_closed_form(ctx30, close, spec):
    N = 5
    rec = recurrence_escalated(spec, N, ctx30)
    closed = closed_form_sequence(spec, N, ctx30)
    for n in range(N + 1):
        assert close(rec.b[n], closed.b[n], ctx30, tol="1e-25")
        if n:
            assert close(rec.a2[n], closed.a2[n], ctx30, tol="1e-25")


def test_stieltjes_lambda_uses_wigert_forms(ctx30, close):
    spec = WeightSpec("stieltjes_lambda", lam="0.5")
    closed = closed_form_sequence(spec, 2, ctx30)
    q = ctx30.mp.exp(-ctx30.mpf(1) / 2)
    assert close(closed.b[0], q ** ctx30.mpf("-1.5"), ctx30)


def test_chihara_zero_p_is_wigert(ctx30, close):
    chihara = closed_form_sequence(WeightSpec("chihara", q="0.5", p="0"), 4, ctx30)
    wigert = closed_form_sequence(WeightSpec("wigert", q="0.5"), 4, ctx30)
    for a, b in zip(chihara.b + chihara.a2[1:], wigert.b + wigert.a2[1:]):
        assert close(a, b, ctx30)


def test_closed_form_unavailable():
    with pytest.raises(Unavailable):
        closed_form_family(WeightSpec("semiclassical_sw", q="0.5", alpha="0.5"))


def test_closed_form_recurrence_bad_family(ctx30):
    with pytest.raises(UnsupportedFamily):
        closed_form_recurrence("hermite", 1, ctx30, "0.5")
    a2, b = closed_form_recurrence("stieltjes_wigert", 0, ctx30, "0.5")
    assert a2 is None


def test_short_table(ctx30):
    table = build_moment_table(WeightSpec("wigert", q="0.5"), 3, ctx30)
    with pytest.raises(ValueError):
        recurrence_from_moments(table, ctx30, N=2)
    assert recurrence_from_moments(table, ctx30).N == 1


def test_nonpositive_moments(ctx30):
    spec = WeightSpec("wigert", q="0.5")
    bad = MomentTable(spec, 30, [ctx30.mpf(1), ctx30.mpf(2), ctx30.mpf(1), ctx30.mpf(1)], [0] * 4, ["closed_form"] * 4)
    with pytest.raises(PrecisionExhausted):
        recurrence_from_moments(bad, ctx30)
    zero = MomentTable(spec, 30, [ctx30.mpf(0), ctx30.mpf(1)], [0, 0], ["closed_form"] * 2)
    with pytest.raises(PrecisionExhausted):
        recurrence_from_moments(zero, ctx30)


def test_orthogonality(ctx40):
    spec = WeightSpec("wigert", q="0.5")
    rec = closed_form_sequence(spec, 3, ctx40)
    table = build_moment_table(spec, 6, ctx40)
    gram = orthogonality_matrix(table, rec, 3, ctx40)
    for i in range(4):
        diag = gram[i][i]
        assert abs(diag - gamma_squared(table, rec, i, ctx40)) < ctx40.mpf("1e-25") * diag
        for j in range(4):
            if i != j:
                assert abs(gram[i][j]) < ctx40.mpf("1e-25") * ctx40.mp.sqrt(diag * gram[j][j])
    with pytest.raises(ValueError):
        orthogonality_matrix(table, rec, 4, ctx40)


def test_norm_by_quadrature(ctx40, close):
    """int P_2^2 w dx by direct quadrature of the polynomial"""
    spec = WeightSpec("wigert", q="0.5")
    rec = closed_form_sequence(spec, 2, ctx40)
    table = build_moment_table(spec, 4, ctx40)
    coeffs = polynomial_coefficients(rec, 2, ctx40)[2]
    quad = build_moment_table(spec, 4, ctx40, method="quadrature")
    direct = sum(c_k * c_l * quad.values[k + l] for k, c_k in enumerate(coeffs) for l, c_l in enumerate(coeffs))
    assert close(direct, gamma_squared(table, rec, 2, ctx40), ctx40, tol="1e-25")


def test_subleading_coefficients(ctx30, close):
    rec = closed_form_sequence(WeightSpec("wigert", q="0.5"), 4, ctx30)
    delta = subleading_from_b(rec).delta
    polys = polynomial_coefficients(rec, 4, ctx30)
    assert delta[0] == 0
    for n in range(1, 5):
        assert polys[n][-1] == 1
        assert close(polys[n][n - 1], delta[n], ctx30)


def test_eval_polynomial_matches_coefficients(ctx30, close):
    rec = closed_form_sequence(WeightSpec("little_qlaguerre", q="0.5", alpha="1"), 3, ctx30)
    x = ctx30.mpf("0.3")
    coeffs = polynomial_coefficients(rec, 3, ctx30)[3]
    assert close(eval_polynomial(rec, 3, x, ctx30), sum(c * x ** k for k, c in enumerate(coeffs)), ctx30)
    with pytest.raises(ValueError):
        eval_polynomial(rec, 6, x, ctx30)


def test_shifted_recurrence(ctx30, close):
    rec = closed_form_sequence(WeightSpec("wigert", q="0.5"), 2, ctx30)
    shifted = shifted_recurrence(rec, 1, "0.5", ctx30)
    assert close(shifted.b[1], 2 * rec.b[1], ctx30)
    assert close(shifted.a2[2], 4 * rec.a2[2], ctx30)


def test_sequence_helpers(ctx30):
    rec = RecurrenceSeq([ctx30.mpf(1), ctx30.mpf(2), ctx30.mpf(3)], [ctx30.mpf(1), ctx30.mpf(-1)], "hankel")
    assert rec.a2[0] is None
    assert rec.N == 2 and rec.depth == 2
    assert rec.a_sq(0) == 0
    assert not rec.positive
    assert rec.first_nonpositive() == 2
    assert rec.truncated(1).N == 1
    with pytest.raises(ValueError):
        RecurrenceSeq([1], [], "guess")


def test_csv_and_json_reingest(ctx30, tmp_path):
    spec = WeightSpec("wigert", q="0.5")
    rec = closed_form_sequence(spec, 3, ctx30)
    csv_text = rec.to_csv(ctx30, tmp_path / "rec.csv")
    again = RecurrenceSeq.from_csv(tmp_path / "rec.csv", ctx30)
    assert again.to_csv(ctx30) == csv_text

    json_text = rec.to_json(ctx30)
    loaded = RecurrenceSeq.from_json(json_text, ctx30)
    assert loaded.spec == spec
    assert loaded.to_json(ctx30) == json_text
