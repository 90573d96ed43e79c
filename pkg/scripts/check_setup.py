#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Verify the qladder installation with a few quick low-precision computations.

Usage:
    python scripts/check_setup.py
"""

import io
import sys
from pathlib import Path

# Set UTF-8 encoding for Windows console
if sys.platform == 'win32':
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8')
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8')

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))


def check_imports():
    """Check that all modules can be imported"""
    print("Checking imports...")

    try:
        from qladder.special import qpoch_finite, qpoch_infinite, eval_phi11  # noqa: F401
        print("  ✓ q-series imported successfully")

        from qladder.weights import WeightSpec, build_moment_table  # noqa: F401
        print("  ✓ Weights and moments imported successfully")

        from qladder.recurrence import recurrence_from_moments, closed_form_sequence  # noqa: F401
        print("  ✓ Recurrence extraction imported successfully")

        from qladder.painleve import theorem_orbit, coefficients_from_orbit  # noqa: F401
        print("  ✓ Painleve orbits imported successfully")

        from qladder.verify import run_suite  # noqa: F401
        print("  ✓ Verification suite imported successfully")

        from qladder.utils.config import load_config, RunConfig  # noqa: F401
        print("  ✓ Utilities imported successfully")

        return True

    except ImportError as e:
        print(f"  ✗ Import failed: {e}")
        return False


def check_wigert():
    """Wigert recurrence at 40 digits against its closed form"""
    print("\nChecking Stieltjes-Wigert recurrence...")

    try:
        from qladder.recurrence import closed_form_sequence, recurrence_escalated
        from qladder.utils import PrecisionContext, agree
        from qladder.weights import WeightSpec

        ctx = PrecisionContext(digits=40)
        spec = WeightSpec("wigert", q="0.5")
        rec = recurrence_escalated(spec, 4, ctx)
        closed = closed_form_sequence(spec, 4, ctx)
        ok, gap = agree(rec.b + rec.a2[1:], closed.b + closed.a2[1:], ctx)
        print(f"  {'✓' if ok else '✗'} b_0..b_4, a_1^2..a_4^2 agree (gap {ctx.mp.nstr(gap, 3)})")
        return ok

    except Exception as e:
        print(f"  ✗ Recurrence check failed: {e}")
        return False


def check_orbit():
    """Short q-P_III orbit against the moment route"""
    print("\nChecking q-P_III orbit...")

    try:
        from qladder.painleve import certify_orbit, orbit_from_recurrence, theorem_orbit
        from qladder.recurrence import recurrence_escalated
        from qladder.utils import PrecisionContext
        from qladder.weights import WeightSpec

        ctx = PrecisionContext(digits=40)
        spec = WeightSpec("semiclassical_sw", q="0.5", alpha="0.5")
        orbit = theorem_orbit(spec, 4, ctx)
        reference = orbit_from_recurrence(recurrence_escalated(spec, 4, ctx), "qp3_thm1", ctx)
        certification = certify_orbit(orbit, reference, ctx)
        print(f"  {'✓' if certification.passed else '✗'} x_0..x_4 certified (max gap {ctx.mp.nstr(certification.max_gap, 3)})")
        return certification.passed

    except Exception as e:
        print(f"  ✗ Orbit check failed: {e}")
        return False


def main():
    print("=" * 60)
    print("qladder Installation Check")
    print("=" * 60)

    results = {
        'Imports': check_imports(),
        'Wigert recurrence': check_wigert(),
        'q-P_III orbit': check_orbit(),
    }

    print("\n" + "=" * 60)
    print("Summary")
    print("=" * 60)

    for name, passed in results.items():
        status = "✓ PASS" if passed else "✗ FAIL"
        print(f"  {name:.<40} {status}")

    all_passed = all(results.values())
    print("\n" + ("All checks passed!" if all_passed else "Some checks failed."))
    return 0 if all_passed else 1


if __name__ == '__main__':
    sys.exit(main())
