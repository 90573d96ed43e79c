"""Shared fixtures: low-precision contexts and the three semiclassical weights"""

import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from qladder.utils.precision import PrecisionContext  # noqa: E402
from qladder.weights.families import WeightSpec  # noqa: E402


def _close(a, b, ctx, tol=None):
    """Relative agreement to ``tol`` (default 10^-(digits - 5))"""
    tol = ctx.mpf(10) ** (5 - ctx.digits) if tol is None else ctx.mpf(tol)
    a, b = ctx.mpf(a), ctx.mpf(b)
    scale = max(abs(a), abs(b))
    if not scale:
        return True
    return abs(a - b) <= tol * scale


@pytest.fixture
def close():
    return _close


@pytest.fixture
def ctx30():
    return PrecisionContext(digits=30)


@pytest.fixture
def ctx40():
    return PrecisionContext(digits=40)


@pytest.fixture
def ctx60():
    return PrecisionContext(digits=60)


@pytest.fixture
def sw_spec():
    return WeightSpec("semiclassical_sw", q="0.5", alpha="0.5")


@pytest.fixture
def qlag_spec():
    return WeightSpec("semiclassical_qlaguerre", q="0.5", alpha="0", p="0.25")


@pytest.fixture
def lattice_spec():
    return WeightSpec("little_qlaguerre_lattice", q="0.5", alpha="1")
