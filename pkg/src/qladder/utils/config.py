"""Configuration management utilities"""

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..weights.families import WeightSpec
from .precision import PrecisionContext

DIGITS_ENV = "QLADDER_DIGITS"
DEFAULT_DIGITS = 200
COMMANDS = ("moments", "recurrence", "painleve", "verify", "tables")
FORMATS = ("csv", "json")


def default_digits() -> int:
    """Base precision, overridable through the QLADDER_DIGITS environment variable"""
    value = os.environ.get(DIGITS_ENV)
    if value is None:
        return DEFAULT_DIGITS
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{DIGITS_ENV} must be an integer, got {value!r}")


@dataclass
class WeightConfig:
    """Weight family and parameters (decimal strings keep exact values)"""
    family: str = "semiclassical_sw"
    q: Optional[str] = "0.5"
    alpha: str = "0.5"
    p: str = "0"
    k: Optional[str] = None
    lam: str = "0"
    p_base: str = "q2"  # 'q2' or 'q'

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]):
        return cls(**config_dict)

    def to_spec(self) -> WeightSpec:
        """Validated WeightSpec; raises DomainError / UnsupportedFamily"""
        return WeightSpec(
            family=self.family,
            q=self.q,
            alpha=self.alpha,
            p=self.p,
            k=self.k,
            lam=self.lam,
            p_base=self.p_base,
        )


@dataclass
class PrecisionConfig:
    """Base precision and the escalation policy"""
    digits: int = field(default_factory=default_digits)
    escalation_c: float = 2.0
    verify_factor: float = 1.5
    max_escalations: int = 3
    guard_digits: int = 10

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]):
        return cls(**config_dict)

    def to_context(self) -> PrecisionContext:
        return PrecisionContext(
            digits=int(self.digits),
            escalation_c=float(self.escalation_c),
            verify_factor=float(self.verify_factor),
            max_escalations=int(self.max_escalations),
            guard_digits=int(self.guard_digits),
        )


@dataclass
class OutputConfig:
    """Where and how results are written"""
    format: str = "csv"  # 'csv' or 'json'
    path: Optional[str] = None  # stdout when None
    log_dir: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]):
        return cls(**config_dict)


@dataclass
class RunConfig:
    """
    Master configuration for one command run.

    This is the config object the command line builds and every command reads.
    """
    command: str = "recurrence"
    weight: WeightConfig = field(default_factory=WeightConfig)
    precision: PrecisionConfig = field(default_factory=PrecisionConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    N: int = 10
    tol: Optional[str] = None
    method: str = "auto"  # moment table method
    rule: str = "trapezoid"  # quadrature rule
    perturb: Optional[str] = None
    name: str = "run"

    def __post_init__(self):
        """Convert dict configs to dataclass objects"""
        if isinstance(self.weight, dict):
            self.weight = WeightConfig.from_dict(self.weight)
        if isinstance(self.precision, dict):
            self.precision = PrecisionConfig.from_dict(self.precision)
        if isinstance(self.output, dict):
            self.output = OutputConfig.from_dict(self.output)
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command: {self.command}")
        if self.output.format not in FORMATS:
            raise ValueError(f"Unknown output format: {self.output.format}")
        if int(self.N) < 0:
            raise ValueError(f"N must be nonnegative, got {self.N}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert entire config to dictionary"""
        return {
            'command': self.command,
            'weight': self.weight.to_dict(),
            'precision': self.precision.to_dict(),
            'output': self.output.to_dict(),
            'N': self.N,
            'tol': self.tol,
            'method': self.method,
            'rule': self.rule,
            'perturb': self.perturb,
            'name': self.name,
        }

    def context(self) -> PrecisionContext:
        return self.precision.to_context()


def load_config(config_path: str) -> RunConfig:
    """
    Load configuration from YAML file.

    Args:
        config_path: Path to YAML configuration file

    Returns:
        RunConfig object
    """
    config_path = Path(config_path)

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path, 'r') as f:
        config_dict = yaml.safe_load(f)

    # Handle None case (empty YAML)
    if config_dict is None:
        config_dict = {}

    return RunConfig(**config_dict)


def save_config(config: RunConfig, save_path: str):
    """
    Save configuration to YAML file.

    Args:
        config: RunConfig object to save
        save_path: Path where to save the YAML file
    """
    save_path = Path(save_path)
    save_path.parent.mkdir(parents=True, exist_ok=True)

    with open(save_path, 'w') as f:
        yaml.dump(config.to_dict(), f, default_flow_style=False, sort_keys=False)


def merge_configs(base_config: RunConfig, override_dict: Dict[str, Any]) -> RunConfig:
    """
    Merge base configuration with override dictionary.

    Used for command-line argument overrides; ``None`` values are skipped so
    unset flags keep the configured value.

    Args:
        base_config: Base configuration
        override_dict: Dictionary with override values

    Returns:
        Merged configuration
    """
    base_dict = base_config.to_dict()

    # Deep merge
    def deep_update(d, u):
        for k, v in u.items():
            if v is None:
                continue
            if isinstance(v, dict) and k in d and isinstance(d[k], dict):
                d[k] = deep_update(d.get(k, {}), v)
            else:
                d[k] = v
        return d

    merged_dict = deep_update(base_dict, override_dict)
    return RunConfig(**merged_dict)
