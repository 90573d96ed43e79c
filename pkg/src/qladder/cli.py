"""
Command-line entry point.

Usage:
    qladder moments --family wigert --q 0.5 --n 4
    qladder recurrence --family chihara --q 0.5 --p 0.25 --n 8 --digits 60
    qladder painleve --family semiclassical_sw --q 0.5 --alpha 0.5 --n 10
    qladder verify --digits 60
    qladder verify --perturb 1e-3
    qladder tables --output ./tables
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from tqdm import tqdm

from .errors import QLadderError, Unavailable
from .painleve.equations import FAMILY_VARIANT
from .painleve.orbits import certify_orbit, coefficients_from_orbit, orbit_from_recurrence, theorem_orbit
from .recurrence.chebyshev import recurrence_escalated
from .recurrence.sequences import closed_form_sequence
from .utils.config import RunConfig, load_config, merge_configs, save_config
from .utils.logging import RunLog, setup_logger
from .utils.precision import PrecisionContext, relative_gap
from .utils.serialization import decimal_string, write_csv, write_json
from .verify.identities import IdentityReport, default_tolerance
from .verify.suite import DEFAULT_WEIGHTS, run_suite
from .weights.families import FAMILIES, P_BASES
from .weights.moments import TABLE_METHODS, build_moment_table
from .weights.quadrature import RULES

logger = logging.getLogger("qladder.cli")

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def emit(text: str, path: Optional[str]):
    """Write to ``path`` or stdout"""
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n")
    logger.info(f"wrote {path}")


def _tol(cfg: RunConfig, ctx: PrecisionContext):
    return default_tolerance(ctx) if cfg.tol is None else ctx.mpf(cfg.tol)


def cmd_moments(cfg: RunConfig, ctx: PrecisionContext) -> int:
    """mu_0..mu_N of the configured weight"""
    spec = cfg.weight.to_spec()
    table = build_moment_table(spec, cfg.N, ctx, method=cfg.method, rule=cfg.rule)
    if cfg.output.format == "json":
        emit(table.to_json(ctx), cfg.output.path)
        return EXIT_OK
    rows = [
        (str(n), decimal_string(v, ctx.digits, ctx.mp), decimal_string(e, 5, ctx.mp), m)
        for n, (v, e, m) in enumerate(zip(table.values, table.error_bounds, table.methods))
    ]
    emit(write_csv(("n", "mu_n", "error_bound", "method"), rows), cfg.output.path)
    return EXIT_OK


def cmd_recurrence(cfg: RunConfig, ctx: PrecisionContext) -> int:
    """Hankel-route coefficients, with the closed forms alongside when known"""
    spec = cfg.weight.to_spec()
    rec = recurrence_escalated(spec, cfg.N, ctx, method=cfg.method, rule=cfg.rule)
    try:
        closed = closed_form_sequence(spec, cfg.N, ctx)
    except Unavailable:
        closed = None

    if cfg.output.format == "json":
        payload = rec.to_dict(ctx)
        if closed is not None:
            payload["closed_form"] = closed.to_dict(ctx)
        emit(write_json(payload), cfg.output.path)
        return EXIT_OK

    header = ["n", "b_n", "a2_n"]
    rows = [list(row) for row in rec.rows(ctx)]
    if closed is not None:
        header += ["b_n_closed", "a2_n_closed", "rel_gap"]
        for n, (row, closed_row) in enumerate(zip(rows, closed.rows(ctx))):
            gap = relative_gap(ctx.mpf(rec.b[n]), ctx.mpf(closed.b[n]))
            if n:
                gap = max(gap, relative_gap(ctx.mpf(rec.a2[n]), ctx.mpf(closed.a2[n])))
            row += [closed_row[1], closed_row[2], decimal_string(gap, 5, ctx.mp)]
    emit(write_csv(header, rows), cfg.output.path)
    return EXIT_OK


def painleve_rows(cfg: RunConfig, ctx: PrecisionContext):
    """Orbit, mapped coefficients and the Hankel reference for one weight"""
    spec = cfg.weight.to_spec()
    variant = FAMILY_VARIANT.get(spec.family)
    if variant is None:
        raise QLadderError(
            f"no Painleve orbit for {spec.family}; use one of {sorted(FAMILY_VARIANT)}"
        )
    orbit = theorem_orbit(spec, cfg.N, ctx, method=cfg.method)
    mapped = coefficients_from_orbit(orbit, ctx.escalated(cfg.N, spec.q_float()))
    hankel = recurrence_escalated(spec, cfg.N, ctx, method=cfg.method)
    reference = orbit_from_recurrence(hankel, variant, ctx)
    certification = certify_orbit(orbit, reference, ctx, tol=_tol(cfg, ctx))

    run_log = RunLog(cfg.output.log_dir, cfg.name)
    rows = []
    for n, x in enumerate(orbit.x):
        residual = orbit.residuals[n]
        if residual is not None:
            run_log.log_metric("residual", residual, n)
        run_log.log_metric("orbit_gap", certification.gaps[n], n)
        rows.append([
            str(n),
            decimal_string(x, ctx.digits, ctx.mp),
            decimal_string(residual, 5, ctx.mp),
            decimal_string(mapped.a_sq(n) if n else None, ctx.digits, ctx.mp),
            decimal_string(mapped.b[n] if n < len(mapped.b) else None, ctx.digits, ctx.mp),
            decimal_string(hankel.a2[n] if n else None, ctx.digits, ctx.mp),
            decimal_string(hankel.b[n], ctx.digits, ctx.mp),
            decimal_string(certification.gaps[n], 5, ctx.mp),
        ])
    worst = run_log.get_worst("residual")
    logger.info(
        f"{spec.family}: worst orbit residual "
        f"{'n/a' if worst is None else ctx.mp.nstr(worst, 3)}, "
        f"max gap {ctx.mp.nstr(certification.max_gap, 3)}"
    )
    logger.debug(run_log.summary())
    return orbit, certification, rows


PAINLEVE_COLUMNS = ("n", "x_n", "residual", "a2_n", "b_n", "a2_n_hankel", "b_n_hankel", "gap")


def cmd_painleve(cfg: RunConfig, ctx: PrecisionContext) -> int:
    """Painleve orbit from moments, certified against the moment route"""
    orbit, certification, rows = painleve_rows(cfg, ctx)
    if cfg.output.format == "json":
        payload = orbit.to_dict(ctx)
        payload["certified"] = certification.passed
        payload["gaps"] = [decimal_string(g, 5, ctx.mp) for g in certification.gaps]
        payload["columns"] = list(PAINLEVE_COLUMNS)
        payload["rows"] = rows
        emit(write_json(payload), cfg.output.path)
    else:
        emit(write_csv(PAINLEVE_COLUMNS, rows), cfg.output.path)
    return EXIT_OK if certification.passed else EXIT_FAILED


def _report_rows(reports: List[IdentityReport], ctx: PrecisionContext):
    return [
        (r.id, f"{r.indices[0]}-{r.indices[1]}", ctx.mp.nstr(r.max_residual, 5), ctx.mp.nstr(r.tol, 5), str(r.passed))
        for r in reports
    ]


def cmd_verify(cfg: RunConfig, ctx: PrecisionContext, single: bool = False) -> int:
    """Identity and pointwise suite; exit 1 when any check fails"""
    weights = [cfg.weight.to_spec()] if single else DEFAULT_WEIGHTS
    depth = cfg.N if single else None
    tol = None if cfg.tol is None else ctx.mpf(cfg.tol)
    suite = run_suite(ctx, weights, N=depth, tol=tol, perturb=cfg.perturb, progress=True)
    if cfg.output.format == "json":
        emit(suite.to_json(ctx), cfg.output.path)
    else:
        emit(write_csv(("id", "indices", "max_residual", "tol", "passed"), _report_rows(suite.reports, ctx)), cfg.output.path)
    if not suite.passed:
        logger.warning(f"failed checks: {', '.join(suite.failures)}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_tables(cfg: RunConfig, ctx: PrecisionContext) -> int:
    """Plot-ready CSV for every semiclassical weight: moments, recurrence, orbit"""
    out_dir = Path(cfg.output.path or "./tables")
    status = EXIT_OK
    for spec in tqdm(DEFAULT_WEIGHTS, desc="tables"):
        run = merge_configs(cfg, {"weight": spec.to_dict()})
        table = build_moment_table(spec, 2 * cfg.N + 1, ctx, method=cfg.method)
        moment_rows = [(str(n), decimal_string(v, ctx.digits, ctx.mp)) for n, v in enumerate(table.values)]
        write_csv(("n", "mu_n"), moment_rows, out_dir / f"moments_{spec.family}.csv")

        rec = recurrence_escalated(spec, cfg.N, ctx, method=cfg.method)
        rec.to_csv(ctx, out_dir / f"recurrence_{spec.family}.csv")

        _, certification, rows = painleve_rows(run, ctx)
        write_csv(PAINLEVE_COLUMNS, rows, out_dir / f"orbit_{spec.family}.csv")
        if not certification.passed:
            status = EXIT_FAILED
    logger.info(f"tables written to {out_dir}")
    return status


COMMAND_HANDLERS = {
    "moments": cmd_moments,
    "recurrence": cmd_recurrence,
    "painleve": cmd_painleve,
    "tables": cmd_tables,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None,
                        help='Path to YAML run configuration')
    common.add_argument('--family', type=str, default=None, choices=FAMILIES,
                        help='Weight family')
    common.add_argument('--q', type=str, default=None, help='Base q in (0, 1)')
    common.add_argument('--alpha', type=str, default=None, help='Exponent alpha')
    common.add_argument('--p', type=str, default=None, help='Parameter p')
    common.add_argument('--k', type=str, default=None, help='Wigert scale k (q = exp(-1/(2k^2)))')
    common.add_argument('--lambda', dest='lam', type=str, default=None,
                        help='Stieltjes lambda in [-1, 1]')
    common.add_argument('--p-base', type=str, default=None, choices=P_BASES,
                        help='Base of the (-p/x^2; .) factor')
    common.add_argument('--n', type=int, default=None, help='Depth N (default 10)')
    common.add_argument('--digits', type=int, default=None,
                        help='Target decimal digits (default 200 or $QLADDER_DIGITS)')
    common.add_argument('--tol', type=str, default=None, help='Check tolerance')
    common.add_argument('--method', type=str, default=None, choices=TABLE_METHODS,
                        help='Moment table method')
    common.add_argument('--rule', type=str, default=None, choices=RULES,
                        help='Quadrature rule')
    common.add_argument('--format', type=str, default=None, choices=('csv', 'json'),
                        help='Output format')
    common.add_argument('--output', type=str, default=None,
                        help='Output file (directory for tables); stdout when omitted')
    common.add_argument('--save-config', type=str, default=None,
                        help='Write the effective configuration to this YAML file')
    common.add_argument('--log-file', type=str, default=None, help='Also log to this file')
    common.add_argument('--log-dir', type=str, default=None,
                        help='Directory for per-index residual traces')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for INFO, -vv for DEBUG')

    parser = argparse.ArgumentParser(
        prog='qladder',
        description='q-orthogonal polynomials, q-discrete Painleve orbits and ladder identities',
    )
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('moments', parents=[common], help='Moment table mu_0..mu_N')
    sub.add_parser('recurrence', parents=[common], help='Recurrence coefficients b_n, a_n^2')
    sub.add_parser('painleve', parents=[common], help='Painleve orbit of a semiclassical weight')
    verify = sub.add_parser('verify', parents=[common], help='Ladder identity suite')
    verify.add_argument('--perturb', type=str, default=None,
                        help='Scale b_n by (1 + eps) before checking')
    sub.add_parser('tables', parents=[common], help='Plot-ready CSV for all semiclassical weights')
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Configuration file (if any) overridden by explicit flags"""
    base = load_config(args.config) if args.config else RunConfig()
    overrides: Dict[str, Any] = {
        'command': args.command,
        'weight': {
            'family': args.family,
            'q': args.q,
            'alpha': args.alpha,
            'p': args.p,
            'k': args.k,
            'lam': args.lam,
            'p_base': args.p_base,
        },
        'precision': {'digits': args.digits},
        'output': {'format': args.format, 'path': args.output, 'log_dir': args.log_dir},
        'N': args.n,
        'tol': args.tol,
        'method': args.method,
        'rule': args.rule,
        'perturb': getattr(args, 'perturb', None),
    }
    config = merge_configs(base, overrides)
    if args.k is not None and args.q is None:
        config.weight.q = None
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    setup_logger("qladder", log_file=args.log_file, level=level)

    try:
        config = config_from_args(args)
        # WeightSpec validation happens here, before any computation
        config.weight.to_spec()
        ctx = config.context()
        if args.save_config:
            save_config(config, args.save_config)
        logger.info(f"{config.command}: {config.weight.family} at {ctx.digits} digits, N={config.N}")
        if config.command == "verify":
            single = args.family is not None or args.config is not None
            return cmd_verify(config, ctx, single=single)
        return COMMAND_HANDLERS[config.command](config, ctx)
    except (QLadderError, ValueError, FileNotFoundError) as exc:
        print(f"qladder {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
