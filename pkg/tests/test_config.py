"""Tests for YAML run configuration"""

from pathlib import Path

import pytest

from qladder.utils.config import (
    DEFAULT_DIGITS,
    DIGITS_ENV,
    RunConfig,
    WeightConfig,
    load_config,
    merge_configs,
    save_config,
)

CONFIG_DIR = Path(__file__).parent.parent / "configs"


def test_defaults(monkeypatch):
    monkeypatch.delenv(DIGITS_ENV, raising=False)
    config = RunConfig()
    assert config.command == "recurrence"
    assert config.precision.digits == DEFAULT_DIGITS
    assert config.output.format == "csv"
    assert config.weight.family == "semiclassical_sw"


def test_digits_from_environment(monkeypatch):
    monkeypatch.setenv(DIGITS_ENV, "45")
    assert RunConfig().precision.digits == 45
    assert RunConfig().context().digits == 45


def test_bad_environment_digits(monkeypatch):
    monkeypatch.setenv(DIGITS_ENV, "many")
    with pytest.raises(ValueError):
        RunConfig()


def test_nested_dicts_are_converted():
    config = RunConfig(command="moments", weight={"family": "wigert", "q": "0.3"}, N=4)
    assert isinstance(config.weight, WeightConfig)
    spec = config.weight.to_spec()
    assert spec.family == "wigert"


@pytest.mark.parametrize(
    "kwargs",
    [{"command": "train"}, {"output": {"format": "h5"}}, {"N": -1}],
)
def test_invalid_values(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_invalid_weight():
    with pytest.raises(ValueError):
        WeightConfig(family="wigert", q="1.5").to_spec()
    with pytest.raises(ValueError):
        WeightConfig(family="little_qlaguerre_lattice", alpha="0").to_spec()


def test_save_and_load(tmp_path):
    config = RunConfig(command="painleve", weight={"family": "little_qlaguerre_lattice", "alpha": "1"}, N=12)
    path = tmp_path / "nested" / "run.yaml"
    save_config(config, str(path))
    loaded = load_config(str(path))
    assert loaded.to_dict() == config.to_dict()


def test_empty_file_gives_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv(DIGITS_ENV, raising=False)
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config(str(path)).to_dict() == RunConfig().to_dict()


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "absent.yaml"))


def test_merge_skips_none():
    base = RunConfig(command="verify", N=8, tol="1e-20")
    merged = merge_configs(base, {"N": 3, "tol": None, "weight": {"q": None, "alpha": "1"}})
    assert merged.N == 3
    assert merged.tol == "1e-20"
    assert merged.weight.q == "0.5"
    assert merged.weight.alpha == "1"


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIG_DIR.glob("*.yaml")))
def test_shipped_configs_load(name):
    config = load_config(str(CONFIG_DIR / name))
    assert config.command in ("painleve", "verify")
    config.weight.to_spec()
    assert config.context().digits == config.precision.digits
