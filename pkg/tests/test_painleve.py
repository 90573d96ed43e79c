"""Tests for the q-Painleve steps, orbits and coefficient maps"""

import pytest

from qladder.errors import InvalidP, SingularStep
from qladder.painleve import (
    PainleveOrbit,
    certify_orbit,
    coefficients_from_orbit,
    iterate_orbit,
    orbit_from_recurrence,
    qp3_thm1_step,
    qp5_thm2_step,
    qp5_thm3_step,
    theorem_orbit,
    thm1_initial,
    thm2_initial,
    thm2_to_thm1,
    thm3_coeffs_from_orbit,
    thm3_initial,
)
from qladder.painleve.equations import general_parameters, general_step, step, thm2_constants
from qladder.painleve.orbits import orbit_params
from qladder.recurrence import recurrence_escalated
from qladder.weights.families import WeightSpec
from qladder.weights.moments import build_moment_table

CASES = [
    ("sw_spec", "qp3_thm1", 6),
    ("qlag_spec", "qp5_thm2", 5),
    ("lattice_spec", "qp5_thm3", 8),
]


@pytest.mark.parametrize("fixture, variant, N", CASES)
def test_moment_orbit_satisfies_equation(ctx40, request, fixture, variant, N):
    spec = request.getfixturevalue(fixture)
    rec = recurrence_escalated(spec, N, ctx40)
    orbit = orbit_from_recurrence(rec, variant, ctx40)
    assert len(orbit) == N + 1
    assert orbit.residuals[0] is None and orbit.residuals[-1] is None
    assert orbit.max_residual < ctx40.mpf("1e-30")


@pytest.mark.parametrize("fixture, variant, N", CASES)
def test_iterated_orbit_matches_moment_route(ctx40, request, fixture, variant, N):
    spec = request.getfixturevalue(fixture)
    orbit = theorem_orbit(spec, N, ctx40)
    assert orbit.variant == variant
    assert orbit.truncated is None
    reference = orbit_from_recurrence(recurrence_escalated(spec, N, ctx40), variant, ctx40)
    certification = certify_orbit(orbit, reference, ctx40, tol="1e-30")
    assert certification.passed, certification.first_failure


@pytest.mark.parametrize("fixture, variant, N", CASES)
def test_coefficients_from_orbit(ctx40, close, request, fixture, variant, N):
    spec = request.getfixturevalue(fixture)
    orbit = theorem_orbit(spec, N, ctx40)
    mapped = coefficients_from_orbit(orbit, ctx40.escalated(N, spec.q_float()))
    hankel = recurrence_escalated(spec, N, ctx40)
    assert mapped.source == "painleve"
    assert len(mapped.b) == N
    assert len(mapped.a2) == N + 1
    for n in range(N):
        assert close(mapped.b[n], hankel.b[n], ctx40, tol="1e-20")
    for n in range(1, N + 1):
        assert close(mapped.a2[n], hankel.a2[n], ctx40, tol="1e-20")


def test_thm1_initial_values(ctx40, close, sw_spec):
    x0, x1 = thm1_initial(sw_spec, ctx40)
    table = build_moment_table(sw_spec, 1, ctx40)
    b0 = table.values[1] / table.values[0]
    assert close(x0, -ctx40.mp.sqrt(2), ctx40)
    assert close(x1, -b0 * b0, ctx40)


def test_thm2_initial_uses_kappa(ctx40, close, qlag_spec):
    z0, _ = thm2_initial(qlag_spec, ctx40)
    q, p = ctx40.mpf("0.5"), ctx40.mpf("0.25")
    assert close(z0, -ctx40.mp.sqrt(q * q / p), ctx40)


def test_thm3_b0_identity(ctx40, close, lattice_spec):
    x0, x1 = thm3_initial(lattice_spec, ctx40)
    table = build_moment_table(lattice_spec, 1, ctx40)
    orbit = PainleveOrbit("qp5_thm3", orbit_params(lattice_spec), [x0, x1])
    _, from_orbit = thm3_coeffs_from_orbit(orbit, 0, ctx40)
    _, from_moments = thm3_coeffs_from_orbit(orbit, 0, ctx40, mu0=table.values[0], mu1=table.values[1])
    assert close(from_orbit, from_moments, ctx40, tol="1e-35")


def test_thm2_rejects_zero_p(ctx30):
    spec = WeightSpec("semiclassical_qlaguerre", q="0.5", alpha="0", p="0")
    with pytest.raises(InvalidP):
        theorem_orbit(spec, 4, ctx30)
    with pytest.raises(InvalidP):
        thm2_constants(ctx30.mpf("0.5"), 0, ctx30.mpf(0), ctx30)


def test_singular_steps(ctx30):
    q, alpha = ctx30.mpf("0.5"), ctx30.mpf("0.5")
    with pytest.raises(SingularStep):
        qp3_thm1_step(ctx30.mpf(0), ctx30.mpf(-2), 1, q, alpha, ctx30)
    with pytest.raises(SingularStep):
        qp5_thm3_step(ctx30.mpf(2), q ** (1 + alpha / 2), 1, q, alpha, ctx30)
    with pytest.raises(SingularStep):
        # x_n x_{n-1} = 1
        qp5_thm2_step(ctx30.mpf(2), ctx30.mpf("0.5"), 1, q, 0, ctx30.mpf("0.25"), ctx30)
    with pytest.raises(ValueError):
        qp3_thm1_step(ctx30.mpf(1), ctx30.mpf(1), 0, q, alpha, ctx30)


def test_iteration_truncates_on_singular_step(ctx30):
    orbit = iterate_orbit("qp3_thm1", {"q": "0.5", "alpha": "0.5"}, 0, -2, 5, ctx30)
    assert len(orbit) == 2
    assert orbit.truncated.startswith("SingularStep")


def test_thm1_is_general_qp3(ctx30, close):
    params = {"q": "0.5", "alpha": "0.5"}
    general, (a, b, c, d, q) = general_parameters("qp3_thm1", params, ctx30)
    assert general == "qp3_general"
    x_prev, x_cur = ctx30.mpf("-1.3"), ctx30.mpf("-2.1")
    assert close(
        general_step(general, a, b, c, d, q, x_prev, x_cur, 2, ctx30),
        step("qp3_thm1", params, x_prev, x_cur, 2, ctx30),
        ctx30,
    )


def test_thm2_is_general_qp5_in_inverse_base(ctx30, close):
    params = {"q": "0.5", "alpha": "0", "p": "0.25"}
    general, (a, b, c, d, Q) = general_parameters("qp5_thm2", params, ctx30)
    assert general == "qp5_general"
    assert close(Q, 2, ctx30)
    z_prev, z_cur = ctx30.mpf("-1.1"), ctx30.mpf("0.7")
    assert close(
        general_step(general, a, b, c, d, Q, z_prev, z_cur, 3, ctx30),
        step("qp5_thm2", params, z_prev, z_cur, 3, ctx30),
        ctx30,
    )


def test_general_variant_iteration(ctx30):
    params = {"q": "0.5", "a": "1.5", "b": "2", "c": "0.5", "d": "0.25"}
    orbit = iterate_orbit("qp3_general", params, "1", "1.2", 4, ctx30)
    assert len(orbit) == 5
    assert orbit.max_residual < ctx30.mpf("1e-25")
    with pytest.raises(ValueError):
        orbit.weight()


def test_thm2_to_thm1_scaling(ctx30, close, qlag_spec):
    rec = recurrence_escalated(qlag_spec, 3, ctx30)
    orbit = orbit_from_recurrence(rec, "qp5_thm2", ctx30)
    mapped = thm2_to_thm1(orbit, ctx30)
    # x_0 = z_0 sqrt(p) q^{-1-alpha/2} = -q^-alpha
    assert close(mapped[0], -1, ctx30)
    with pytest.raises(ValueError):
        thm2_to_thm1(orbit_from_recurrence(rec, "qp3_thm1", ctx30, params={"q": "0.5", "alpha": "0"}), ctx30)


def test_thm2_tends_to_thm1_as_p_vanishes(ctx40):
    N = 6
    sw = WeightSpec("semiclassical_sw", q="0.5", alpha="0")
    thm1 = orbit_from_recurrence(recurrence_escalated(sw, N, ctx40), "qp3_thm1", ctx40)
    gaps = []
    for p in ("1e-2", "1e-4", "1e-6"):
        spec = WeightSpec("semiclassical_qlaguerre", q="0.5", alpha="0", p=p)
        orbit = orbit_from_recurrence(recurrence_escalated(spec, N, ctx40), "qp5_thm2", ctx40)
        mapped = thm2_to_thm1(orbit, ctx40)
        assert len(mapped) == len(thm1.x) == N + 1
        gaps.append([abs(ctx40.mpf(x) - ctx40.mpf(y)) for x, y in zip(mapped, thm1.x)])

    floor = ctx40.mpf("1e-25")
    for larger, smaller in zip(gaps, gaps[1:]):
        for n in range(N + 1):
            assert smaller[n] <= larger[n] or larger[n] < floor, n
        # the gap shrinks roughly like p
        assert smaller[N] < larger[N] / 10


def test_unknown_variant():
    with pytest.raises(ValueError):
        PainleveOrbit("qp6", {"q": "0.5"}, [1, 2])


def test_orbit_json_reingest(ctx30, sw_spec):
    orbit = theorem_orbit(sw_spec, 4, ctx30)
    assert orbit.weight() == sw_spec
    text = orbit.to_json(ctx30)
    loaded = PainleveOrbit.from_json(text, ctx30)
    assert loaded.variant == "qp3_thm1"
    assert loaded.to_json(ctx30) == text
    header = orbit.to_csv(ctx30).splitlines()[0]
    assert header == "n,x_n,residual"
