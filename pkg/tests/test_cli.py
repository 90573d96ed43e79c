"""End-to-end tests of the qladder command line"""

import json

import mpmath
import pytest

from qladder.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, main
from qladder.utils.config import load_config
from qladder.utils.serialization import read_csv


def _rel(value, expected):
    expected = mpmath.mpf(expected)
    return abs(mpmath.mpf(value) - expected) / abs(expected)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_wigert_moments(capsys):
    code, out, _ = run(capsys, "moments", "--family", "wigert", "--q", "0.5", "--n", "3", "--digits", "30")
    assert code == EXIT_OK
    rows = read_csv(out)
    assert [row["n"] for row in rows] == ["0", "1", "2", "3"]
    # mu_n = q^{-(n+1)^2/2}
    for row in rows:
        n = int(row["n"])
        assert _rel(row["mu_n"], mpmath.mpf(2) ** (mpmath.mpf((n + 1) ** 2) / 2)) < 1e-25


def test_stieltjes_moments_json(capsys):
    code, out, _ = run(
        capsys, "moments", "--family", "stieltjes_lambda", "--lambda", "0.5",
        "--n", "2", "--digits", "30", "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema"] == "qladder.moments/1"
    assert payload["family"] == "stieltjes_lambda"
    assert _rel(payload["values"][2], mpmath.exp(mpmath.mpf(9) / 4)) < 1e-20


def test_lattice_moments(capsys):
    code, out, _ = run(
        capsys, "moments", "--family", "little_qlaguerre_lattice", "--q", "0.5", "--alpha", "1",
        "--n", "2", "--digits", "30",
    )
    assert code == EXIT_OK
    assert len(read_csv(out)) == 3


def test_recurrence_closed_columns(capsys):
    code, out, _ = run(capsys, "recurrence", "--family", "wigert", "--q", "0.5", "--n", "3", "--digits", "30")
    assert code == EXIT_OK
    rows = read_csv(out)
    assert set(rows[0]) == {"n", "b_n", "a2_n", "b_n_closed", "a2_n_closed", "rel_gap"}
    assert rows[0]["a2_n"] == ""
    assert _rel(rows[0]["b_n"], mpmath.mpf(2) ** 1.5) < 1e-25
    assert _rel(rows[1]["a2_n"], 8) < 1e-25
    assert all(float(row["rel_gap"]) < 1e-20 for row in rows)


def test_painleve_thm1(capsys):
    code, out, _ = run(
        capsys, "painleve", "--family", "semiclassical_sw", "--q", "0.5", "--alpha", "0.5",
        "--n", "4", "--digits", "30",
    )
    assert code == EXIT_OK
    rows = read_csv(out)
    assert len(rows) == 5
    assert rows[0]["residual"] == ""
    assert rows[-1]["residual"] == ""
    # x_0 = -q^{-alpha}
    assert _rel(rows[0]["x_n"], -mpmath.sqrt(2)) < 1e-25


def test_painleve_json_certified(capsys):
    code, out, _ = run(
        capsys, "painleve", "--family", "little_qlaguerre_lattice", "--q", "0.5", "--alpha", "1",
        "--n", "6", "--digits", "30", "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema"] == "qladder.orbit/1"
    assert payload["certified"] is True
    assert len(payload["x"]) == 7


def test_painleve_residual_trace(capsys, tmp_path):
    log_dir = tmp_path / "logs"
    code, _, err = run(
        capsys, "painleve", "--family", "semiclassical_sw", "--q", "0.5", "--alpha", "0.5",
        "--n", "4", "--digits", "30", "--log-dir", str(log_dir), "-v",
    )
    assert code == EXIT_OK
    assert "worst orbit residual" in err
    traces = list(log_dir.glob("*.log"))
    assert len(traces) == 1
    lines = traces[0].read_text().splitlines()
    # residuals exist for n = 1..3, gaps for n = 0..4
    assert sum(line.split(", ")[1].startswith("residual=") for line in lines) == 3
    assert sum(line.split(", ")[1].startswith("orbit_gap=") for line in lines) == 5


def test_thm2_rejects_p_zero(capsys):
    code, _, err = run(
        capsys, "painleve", "--family", "semiclassical_qlaguerre", "--q", "0.5", "--alpha", "0",
        "--p", "0", "--n", "4", "--digits", "30",
    )
    assert code == EXIT_ERROR
    assert "qladder painleve: error:" in err


def test_painleve_needs_semiclassical_family(capsys):
    code, _, err = run(capsys, "painleve", "--family", "wigert", "--q", "0.5", "--n", "3", "--digits", "30")
    assert code == EXIT_ERROR
    assert "no Painleve orbit" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["moments", "--family", "wigert", "--q", "1.2"],
        ["moments", "--family", "little_qlaguerre_lattice", "--q", "0.5", "--alpha", "-1"],
        ["moments", "--config", "does_not_exist.yaml"],
    ],
)
def test_invalid_parameters(capsys, argv):
    code, _, err = run(capsys, *argv, "--digits", "30")
    assert code == EXIT_ERROR
    assert "error:" in err


def test_verify_single_weight(capsys):
    code, out, _ = run(
        capsys, "verify", "--family", "semiclassical_sw", "--q", "0.5", "--alpha", "0.5",
        "--n", "4", "--digits", "40",
    )
    assert code == EXIT_OK
    rows = read_csv(out)
    assert rows
    assert all(row["passed"] == "True" for row in rows)


def test_verify_flags_perturbation(capsys):
    code, out, _ = run(
        capsys, "verify", "--family", "semiclassical_sw", "--q", "0.5", "--alpha", "0.5",
        "--n", "4", "--digits", "40", "--perturb", "1e-3", "--format", "json",
    )
    assert code == EXIT_FAILED
    payload = json.loads(out)
    assert payload["passed"] is False
    assert payload["perturb"] == "1e-3"


def test_save_config(capsys, tmp_path):
    path = tmp_path / "effective.yaml"
    code, _, _ = run(
        capsys, "moments", "--family", "wigert", "--q", "0.5", "--n", "2", "--digits", "30",
        "--save-config", str(path),
    )
    assert code == EXIT_OK
    config = load_config(str(path))
    assert config.command == "moments"
    assert config.weight.family == "wigert"
    assert config.precision.digits == 30


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out" / "moments.csv"
    code, out, _ = run(
        capsys, "moments", "--family", "wigert", "--q", "0.5", "--n", "2", "--digits", "30",
        "--output", str(path),
    )
    assert code == EXIT_OK
    assert out == ""
    assert len(read_csv(path)) == 3


def test_tables(capsys, tmp_path):
    code, _, _ = run(capsys, "tables", "--n", "3", "--digits", "30", "--output", str(tmp_path))
    assert code == EXIT_OK
    for family in ("semiclassical_sw", "semiclassical_qlaguerre", "little_qlaguerre_lattice"):
        assert len(read_csv(tmp_path / f"moments_{family}.csv")) == 8
        assert len(read_csv(tmp_path / f"recurrence_{family}.csv")) == 4
        orbit = read_csv(tmp_path / f"orbit_{family}.csv")
        assert len(orbit) == 4
        assert set(orbit[0]) == {"n", "x_n", "residual", "a2_n", "b_n", "a2_n_hankel", "b_n_hankel", "gap"}
