#!/usr/bin/env python
"""
Run the desk-scale acceptance checks and print a pass/fail line for each.

Usage:
    python scripts/run_acceptance.py
    python scripts/run_acceptance.py --digits 120 --quick
"""

import argparse
import sys
import time
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from qladder.errors import InvalidP, SingularStep
from qladder.painleve import (
    certify_orbit,
    coefficients_from_orbit,
    orbit_from_recurrence,
    qp3_thm1_step,
    theorem_orbit,
    thm2_to_thm1,
)
from qladder.recurrence import closed_form_sequence, recurrence_escalated
from qladder.utils import PrecisionContext, setup_logger
from qladder.utils.precision import relative_gap
from qladder.verify import run_suite
from qladder.weights import WeightSpec, moments_quadrature


def _max_gap(first, second, ctx):
    gaps = [relative_gap(ctx.mpf(a), ctx.mpf(b)) for a, b in zip(first, second) if a is not None and b is not None]
    return max(gaps) if gaps else ctx.mpf(0)


def _report(label, ok, detail, start):
    mark = "✓" if ok else "✗"
    print(f"  {mark} {label}: {detail} ({time.time() - start:.1f}s)")
    return ok


def check_closed_forms(ctx, N):
    """Hankel-derived coefficients against the closed forms"""
    print("\n[1] Closed-form reproduction")
    tol = ctx.mpf(10) ** -min(50, ctx.digits // 3)
    ok = True
    for q in ("0.5", "0.8"):
        for spec in (
            WeightSpec("wigert", q=q),
            WeightSpec("chihara", q=q, p="0.25"),
            WeightSpec("askey", q=q, alpha="0.5"),
            WeightSpec("little_qlaguerre", q=q, alpha="0.5"),
        ):
            start = time.time()
            rec = recurrence_escalated(spec, N, ctx)
            closed = closed_form_sequence(spec, N, ctx)
            gap = max(_max_gap(rec.b, closed.b, ctx), _max_gap(rec.a2[1:], closed.a2[1:], ctx))
            ok &= _report(f"{spec.family} q={q}", gap < tol, f"max gap {ctx.mp.nstr(gap, 3)}", start)
    return ok


def check_lambda_invariance(ctx, n_max=6):
    """Stieltjes moments do not depend on lambda"""
    print("\n[2] Lambda invariance")
    tol = ctx.mpf("1e-25")
    ok = True
    for lam in ("-1", "0", "1"):
        start = time.time()
        spec = WeightSpec("stieltjes_lambda", lam=lam)
        gap = max(
            relative_gap(moments_quadrature(spec, n, ctx).value, ctx.mp.exp(ctx.mpf((n + 1) ** 2) / 4))
            for n in range(n_max + 1)
        )
        ok &= _report(f"lambda={lam}", gap < tol, f"max gap {ctx.mp.nstr(gap, 3)}", start)
    return ok


def check_pipeline(spec, N, ctx, map_tol, residual_tol):
    """Orbit -> (a_n^2, b_n) against the Hankel route, plus moment-orbit residuals"""
    start = time.time()
    orbit = theorem_orbit(spec, N, ctx)
    mapped = coefficients_from_orbit(orbit, ctx.escalated(N, spec.q_float()))
    hankel = recurrence_escalated(spec, N, ctx)
    gap = max(
        _max_gap(mapped.b, hankel.b, ctx),
        _max_gap(mapped.a2[1:], hankel.a2[1:], ctx),
    )
    reference = orbit_from_recurrence(hankel, orbit.variant, ctx)
    worst = max(r for r in reference.residuals if r is not None)
    certification = certify_orbit(orbit, reference, ctx, tol=map_tol)
    ok = gap < map_tol and worst < residual_tol and certification.passed
    return _report(
        f"{spec.family} {spec.params()}",
        ok,
        f"coefficient gap {ctx.mp.nstr(gap, 3)}, residual {ctx.mp.nstr(worst, 3)}",
        start,
    )


def check_thm2_limit(ctx, n_max=6):
    """Mapped q-P_V orbit approaches the q-P_III orbit as p -> 0"""
    start = time.time()
    thm1 = orbit_from_recurrence(recurrence_escalated(WeightSpec("semiclassical_sw", q="0.5", alpha="0"), n_max, ctx), "qp3_thm1", ctx)
    gaps = []
    for p in ("1e-6", "1e-10"):
        spec = WeightSpec("semiclassical_qlaguerre", q="0.5", alpha="0", p=p)
        orbit = orbit_from_recurrence(recurrence_escalated(spec, n_max, ctx), "qp5_thm2", ctx)
        mapped = thm2_to_thm1(orbit, ctx)
        gaps.append([abs(ctx.mpf(x) - ctx.mpf(y)) for x, y in zip(mapped, thm1.x)])
    ok = all(small <= large for small, large in zip(gaps[1], gaps[0]))
    return _report("p -> 0 limit", ok, f"gap at n={n_max}: {ctx.mp.nstr(gaps[0][-1], 3)} -> {ctx.mp.nstr(gaps[1][-1], 3)}", start)


def check_thm3_extras(ctx, N=15):
    """Lattice orbit residuals and the b_0^2 identity"""
    start = time.time()
    spec = WeightSpec("little_qlaguerre_lattice", q="0.5", alpha="1")
    hankel = recurrence_escalated(spec, N, ctx)
    reference = orbit_from_recurrence(hankel, "qp5_thm3", ctx)
    worst = max(r for r in reference.residuals if r is not None)
    b0_sq = coefficients_from_orbit(reference, ctx).b[0] ** 2
    gap = relative_gap(ctx.mpf(b0_sq), ctx.mpf(hankel.b[0]) ** 2)
    ok = worst < ctx.mpf("1e-30") and gap < ctx.tol
    return _report(f"lattice N={N}", ok, f"residual {ctx.mp.nstr(worst, 3)}, b_0^2 gap {ctx.mp.nstr(gap, 3)}", start)


def check_robustness(ctx):
    """Documented errors instead of silent wrong numbers"""
    print("\n[7] Robustness")
    start = time.time()
    ok = True
    try:
        theorem_orbit(WeightSpec("semiclassical_qlaguerre", q="0.5", alpha="0", p="0"), 4, ctx)
        ok &= _report("p = 0 rejected", False, "no error raised", start)
    except InvalidP as e:
        ok &= _report("p = 0 rejected", True, str(e), start)
    try:
        qp3_thm1_step(ctx.mpf(0), ctx.mpf(-2), 1, ctx.mpf("0.5"), ctx.mpf("0.5"), ctx)
        ok &= _report("zero denominator", False, "no error raised", start)
    except SingularStep as e:
        ok &= _report("zero denominator", True, str(e), start)
    return ok


def main():
    parser = argparse.ArgumentParser(description='Run acceptance checks')
    parser.add_argument('--digits', type=int, default=200, help='Target decimal digits')
    parser.add_argument('--quick', action='store_true', help='Smaller depths for a fast pass')
    parser.add_argument('--log-file', type=str, default=None, help='Log file')
    args = parser.parse_args()

    setup_logger("qladder", log_file=args.log_file, level=30)
    ctx = PrecisionContext(digits=args.digits)
    depth = 6 if args.quick else 12

    print("=" * 60)
    print(f"qladder acceptance checks at {ctx.digits} digits")
    print("=" * 60)

    results = {}
    results['closed forms'] = check_closed_forms(ctx, depth)
    results['lambda invariance'] = check_lambda_invariance(ctx)

    map_tol, residual_tol = ctx.mpf("1e-20"), ctx.mpf("1e-30")
    print("\n[3] q-P_III pipeline (semiclassical Stieltjes-Wigert)")
    results['qp3_thm1'] = all(
        check_pipeline(WeightSpec("semiclassical_sw", q="0.5", alpha=alpha), min(depth, 10), ctx, map_tol, residual_tol)
        for alpha in ("0.5", "1")
    )
    print("\n[4] q-P_V pipeline (semiclassical q-Laguerre)")
    results['qp5_thm2'] = all(
        check_pipeline(WeightSpec("semiclassical_qlaguerre", q="0.5", alpha="0", p=p), min(depth, 8), ctx, map_tol, residual_tol)
        for p in ("0.25", "0.3")
    ) and check_thm2_limit(ctx)
    print("\n[5] q-P_V pipeline (lattice)")
    results['qp5_thm3'] = check_pipeline(
        WeightSpec("little_qlaguerre_lattice", q="0.5", alpha="1"), depth, ctx, map_tol, residual_tol
    ) and check_thm3_extras(ctx)

    print("\n[6] Ladder identity suite")
    start = time.time()
    suite = run_suite(ctx, progress=True)
    results['identities'] = _report(
        "all weights", suite.passed, f"{len(suite.reports)} checks, failures: {suite.failures or 'none'}", start
    )
    results['robustness'] = check_robustness(ctx)

    print("\n" + "=" * 60)
    print("Summary")
    print("=" * 60)
    for name, passed in results.items():
        print(f"  {name:.<40} {'✓ PASS' if passed else '✗ FAIL'}")

    sys.exit(0 if all(results.values()) else 1)


if __name__ == '__main__':
    main()
