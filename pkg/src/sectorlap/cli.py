"""Command line front end.

Every subcommand writes CSV (UTF-8, LF line endings, one header row, complex
quantities split into _re/_im columns, floats at 17 significant digits) either
to --out or to stdout.  Exit codes: 0 success, 2 invalid request (bad flags,
config, geometry, or domain), 3 numeric failure (budget exhausted or an
ill-conditioned fit).
"""

import argparse
import cmath
import csv
import math
import sys
from typing import Optional

import numpy as np

from .catalog import parse_complex, resolve, type_for
from .errors import (
    AngularMarginTooSmall,
    BudgetExceeded,
    IllConditioned,
    InvalidApex,
    InvalidDecay,
    OutsideDomain,
    OutsideSector,
    OutsideUnion,
)
from .geometry import GrowthCertificate, SectorSpec, build_gamma
from .indicator import default_s_grid, estimate_indicator, indicator_value
from .inversion import ReconstructionQuery, reconstruct, roundtrip_report
from .laplace import (
    ConcatenatedTransform,
    DELTA_MIN_DEFAULT,
    TransformQuery,
    concatenated_transform,
    directional_transform,
    gamma_bound_check,
    select_direction,
)
from .probe import probe_report
from .quadrature import QuadratureBudget
from .selftest import run_criteria

__all__ = ["main", "console_main", "build_parser"]

# per-sample domain violations count as numeric failures (exit 3); config
# problems caught up front (bad ids, ranges, apex gate) exit 2
_SKIPPABLE = (OutsideDomain, OutsideUnion, OutsideSector, AngularMarginTooSmall)
_NUMERIC_ERRORS = (BudgetExceeded, IllConditioned) + _SKIPPABLE
_REQUEST_ERRORS = (InvalidApex, InvalidDecay, ValueError)
_BOOL_KEYS = {"skip_invalid", "check_bound"}


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _complex_list(text: str) -> list[complex]:
    return [parse_complex(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _write_csv(out: Optional[str], header: list[str], rows: list[list]) -> None:
    formatted = [[_fmt(cell) if not isinstance(cell, str) else cell for cell in row] for row in rows]
    if out in (None, "-"):
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(formatted)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(formatted)


def _load_config(path: str) -> dict[str, str]:
    """Flat key=value pairs; blank lines and full-line # comments ignored."""
    pairs = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            pairs[key.strip().replace("-", "_")] = value.strip()
    return pairs


def _coerce_config(pairs: dict[str, str]) -> dict:
    typed = {}
    for key, value in pairs.items():
        if key in _BOOL_KEYS:
            low = value.lower()
            if low in ("1", "true", "yes", "on"):
                typed[key] = True
            elif low in ("0", "false", "no", "off"):
                typed[key] = False
            else:
                raise ValueError(f"config key {key!r} expects a boolean, got {value!r}")
        else:
            typed[key] = value  # argparse re-parses string defaults with the flag's type
    return typed


def _budget(args) -> QuadratureBudget:
    abs_floor = args.abs_floor if args.abs_floor is not None else max(1e-15, args.rel_tol * 1e-3)
    return QuadratureBudget(rel_tol=args.rel_tol, abs_floor=abs_floor)


def _require_fn(args, parser):
    if args.fn is None:
        parser.error(f"{args.command}: --fn is required (flag or config)")
    return resolve(args.fn)


def _cmd_transform(args, parser) -> int:
    fn = _require_fn(args, parser)
    if not args.omega:
        parser.error("transform: --omega is required (comma separated complex values)")
    budget = _budget(args)
    header = [
        "theta", "omega_re", "omega_im", "value_re", "value_im",
        "est_error", "margin", "truncation_T", "panels",
    ]
    rows, skipped = [], 0
    ct = None
    if args.theta is None:
        ct = ConcatenatedTransform.build(
            fn, alpha=args.alpha, indicator_source=args.indicator_source, min_margin=args.delta_min
        )
    for omega in args.omega:
        try:
            if ct is None:
                theta = args.theta
                ind, _ = indicator_value(fn, theta, args.indicator_source)
                margin = -ind - (omega * cmath.exp(1j * theta)).real
                res = directional_transform(
                    TransformQuery(fn, theta, omega, budget, args.delta_min, args.indicator_source)
                )
            else:
                theta = select_direction(ct, omega)
                margin = ct.margin(omega, theta)
                res = concatenated_transform(ct, omega, budget)
        except _SKIPPABLE as exc:
            if args.skip_invalid:
                skipped += 1
                print(f"skipping omega={omega}: {exc}", file=sys.stderr)
                continue
            raise
        rows.append(
            [theta, omega.real, omega.imag, res.value.real, res.value.imag,
             res.est_error, margin, res.truncation_T, res.panels_used]
        )
    _write_csv(args.out, header, rows)
    if skipped:
        print(f"transform: skipped {skipped} of {len(args.omega)} points", file=sys.stderr)
    return 0


def _sector_for(args, fn) -> SectorSpec:
    # contour commands need a strict-interior opening: at the entry's own cap
    # (near pi/2 for wide entries) the V-contour degenerates into a line
    alpha = args.alpha if args.alpha is not None else min(fn.spec.alpha, math.pi / 4)
    h = args.h if args.h is not None else type_for(fn, alpha)
    return SectorSpec(alpha=alpha, h=h)


def _preflight_bound(args, fn, gamma) -> None:
    cert = GrowthCertificate(epsilon=args.epsilon, c_epsilon=fn.envelope_const)
    excess = gamma_bound_check(fn, cert, gamma, samples=50, budget=_budget(args))
    status = "holds" if excess <= 0 else "VIOLATED"
    print(
        f"contour bound (epsilon={args.epsilon}) {status}: worst |g| excess {excess:.3e}",
        file=sys.stderr,
    )


def _cmd_invert(args, parser) -> int:
    fn = _require_fn(args, parser)
    if not args.z:
        parser.error("invert: --z is required (comma separated complex values)")
    spec = _sector_for(args, fn)
    gamma = build_gamma(spec, args.p)
    budget = _budget(args)
    if args.check_bound:
        _preflight_bound(args, fn, gamma)
    header = [
        "z_re", "z_im", "value_re", "value_im", "expected_re", "expected_im",
        "abs_residual", "est_error", "truncation_T", "panels",
    ]
    rows, skipped = [], 0
    for z in args.z:
        try:
            res = reconstruct(ReconstructionQuery(fn, gamma, z, budget, args.g_source))
        except _SKIPPABLE as exc:
            if args.skip_invalid:
                skipped += 1
                print(f"skipping z={z}: {exc}", file=sys.stderr)
                continue
            raise
        expected = complex(fn.evaluate(z))
        rows.append(
            [z.real, z.imag, res.value.real, res.value.imag, expected.real, expected.imag,
             abs(res.value - expected), res.est_error, res.truncation_T, res.panels_used]
        )
    _write_csv(args.out, header, rows)
    if skipped:
        print(f"invert: skipped {skipped} of {len(args.z)} points", file=sys.stderr)
    return 0


def _cmd_roundtrip(args, parser) -> int:
    fn = _require_fn(args, parser)
    spec = _sector_for(args, fn)
    gamma = build_gamma(spec, args.p)  # fail fast on a bad apex before any quadrature
    if args.check_bound:
        _preflight_bound(args, fn, gamma)
    angles = args.angles if args.angles is not None else [-spec.alpha / 2, 0.0, spec.alpha / 2]
    grid = [radius * cmath.exp(1j * angle) for radius in args.radii for angle in angles]
    report = roundtrip_report(fn, spec, args.p, grid, _budget(args), args.g_source)

    bad = [row for row in report.rows if row.error is not None]
    if bad and not args.skip_invalid:
        print(f"error: z={bad[0].z}: {bad[0].error}", file=sys.stderr)
        return 3

    header = [
        "z_re", "z_im", "expected_re", "expected_im", "value_re", "value_im",
        "abs_residual", "rel_residual", "est_error",
    ]
    rows = [
        [row.z.real, row.z.imag, row.expected.real, row.expected.imag,
         row.reconstructed.real, row.reconstructed.imag,
         row.abs_residual, row.rel_residual, row.est_error]
        for row in report.rows
        if row.error is None
    ]
    _write_csv(args.out, header, rows)
    print(
        f"roundtrip {fn.id}: max_abs={report.max_abs:.3e} max_rel={report.max_rel:.3e} "
        f"median_rel={report.median_rel:.3e} skipped={report.failures}",
        file=sys.stderr,
    )
    # written "not <=" so an all-skipped grid (max_rel = nan) still fails
    if not report.max_rel <= args.max_rel:
        print(
            f"roundtrip {fn.id}: max_rel {report.max_rel:.3e} exceeds --max-rel {args.max_rel:.3e}",
            file=sys.stderr,
        )
        return 3
    return 0


def _cmd_indicator(args, parser) -> int:
    fn = _require_fn(args, parser)
    alpha = args.alpha if args.alpha is not None else fn.spec.alpha
    if args.thetas is not None:
        thetas = args.thetas
    else:
        thetas = list(np.linspace(-alpha, alpha, args.theta_grid))
    s_grid = default_s_grid(1.0, args.s_max, args.s_points)
    header = ["theta", "estimate", "ci_width", "s_max", "oracle", "deviation"]
    rows = []
    for theta in thetas:
        est = estimate_indicator(fn, float(theta), s_grid=s_grid)
        if fn.indicator_oracle is not None:
            exact = fn.indicator_oracle(float(theta))
            rows.append([theta, est.value, est.ci_width, est.s_max, exact, abs(est.value - exact)])
        else:
            rows.append([theta, est.value, est.ci_width, est.s_max, None, None])
    _write_csv(args.out, header, rows)
    return 0


def _cmd_probe(args, parser) -> int:
    fn = _require_fn(args, parser)
    if (args.q is None) != (args.r is None):
        parser.error("probe: --q and --r must be given together")
    rep = probe_report(
        fn,
        args.theta,
        budget=_budget(args),
        g_source=args.g_source,
        center=args.center,
        q=args.q,
        r=args.r,
        alpha=args.alpha,
    )
    header = [
        "theta", "detected", "singularity_re", "singularity_im", "blowup_exponent",
        "radius_estimate", "predicted_distance", "j_slope_chord", "j_slope_upper", "j_slope_lower",
    ]
    point = rep.boundary_point
    slopes = rep.J_slopes if rep.J_slopes is not None else (None, None, None)
    rows = [[
        rep.theta, rep.detected,
        None if point is None else point.real,
        None if point is None else point.imag,
        rep.blowup_exponent, rep.radius_estimate, rep.predicted_distance,
        slopes[0], slopes[1], slopes[2],
    ]]
    _write_csv(args.out, header, rows)
    return 0


def _cmd_selftest(args, parser) -> int:
    results = run_criteria(args.only)
    if args.only and not results:
        parser.error(f"selftest: no criteria match --only {args.only}")
    failed = [r for r in results if not r.passed]
    total = sum(r.seconds for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed in {total:.0f}s")
    return 1 if failed else 0


def _add_output_flags(sp):
    sp.add_argument("--config", help="flat key=value file; explicit flags override it")
    sp.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-9,
                    help="relative quadrature tolerance (default 1e-9)")
    sp.add_argument("--abs-floor", dest="abs_floor", type=float, default=None,
                    help="absolute quadrature floor (default rel-tol/1000)")
    sp.add_argument("--out", default="-", help="CSV output path, '-' for stdout")
    sp.add_argument("--skip-invalid", dest="skip_invalid", action="store_true",
                    help="skip points that violate domain constraints instead of aborting")


def _add_fn_flags(sp):
    sp.add_argument("--fn", help="catalog id, e.g. exp:a=-1 | sum:a1=-1,c1=1,a2=-2,c2=2 "
                                 "| zero | rational | trig")
    sp.add_argument("--alpha", type=float, default=None,
                    help="sector half-opening in (0, pi/2); defaults to the entry's own")
    sp.add_argument("--h", type=float, default=None,
                    help="exponential type bound; defaults to the entry's value at alpha")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sectorlap",
        description="Directional Laplace transforms on a sector, contour inversion, "
                    "and analyticity probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    registry = {}

    sp = sub.add_parser("transform", help="evaluate the transform g at given omega points")
    _add_fn_flags(sp)
    sp.add_argument("--theta", type=float, default=None,
                    help="fixed direction; omitted means best direction per omega")
    sp.add_argument("--omega", type=_complex_list, default=None,
                    help="comma separated complex points, e.g. -2+0i,-1.5+0.3i")
    sp.add_argument("--delta-min", dest="delta_min", type=float, default=DELTA_MIN_DEFAULT,
                    help="smallest admissible margin to the half-plane boundary")
    sp.add_argument("--indicator-source", dest="indicator_source",
                    choices=("auto", "oracle", "numeric"), default="auto")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_transform)
    registry["transform"] = sp

    sp = sub.add_parser("invert", help="reconstruct f from g over the unbounded contour")
    _add_fn_flags(sp)
    sp.add_argument("--p", type=float, required=False, default=None, help="contour apex (real)")
    sp.add_argument("--z", type=_complex_list, default=None,
                    help="comma separated evaluation points inside the sector")
    sp.add_argument("--g-source", dest="g_source", choices=("auto", "oracle", "numeric"),
                    default="auto")
    sp.add_argument("--epsilon", type=float, default=0.1,
                    help="growth slack for --check-bound")
    sp.add_argument("--check-bound", dest="check_bound", action="store_true",
                    help="verify the uniform |g| bound on the contour before inverting")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_invert)
    registry["invert"] = sp

    sp = sub.add_parser("roundtrip", help="transform then invert on a polar grid, with residuals")
    _add_fn_flags(sp)
    sp.add_argument("--p", type=float, default=None, help="contour apex (real)")
    sp.add_argument("--radii", type=_float_list, default=[0.5, 1.0, 2.0],
                    help="comma separated grid radii")
    sp.add_argument("--angles", type=_float_list, default=None,
                    help="comma separated grid angles (default -alpha/2,0,alpha/2)")
    sp.add_argument("--g-source", dest="g_source", choices=("auto", "oracle", "numeric"),
                    default="auto")
    sp.add_argument("--max-rel", dest="max_rel", type=float, default=1e-4,
                    help="largest acceptable relative residual; exceeding it exits 3")
    sp.add_argument("--epsilon", type=float, default=0.1,
                    help="growth slack for --check-bound")
    sp.add_argument("--check-bound", dest="check_bound", action="store_true")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_roundtrip)
    registry["roundtrip"] = sp

    sp = sub.add_parser("indicator", help="estimate the directional growth indicator")
    _add_fn_flags(sp)
    sp.add_argument("--thetas", type=_float_list, default=None,
                    help="comma separated directions; overrides --theta-grid")
    sp.add_argument("--theta-grid", dest="theta_grid", type=int, default=9,
                    help="count of equispaced directions over [-alpha, alpha]")
    sp.add_argument("--s-max", dest="s_max", type=float, default=2.0**16,
                    help="largest radius sampled along each ray")
    sp.add_argument("--s-points", dest="s_points", type=int, default=64,
                    help="geometric sample count per ray")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_indicator)
    registry["indicator"] = sp

    sp = sub.add_parser("probe", help="boundary blow-up sweep, radius scan, slope diagnostics")
    _add_fn_flags(sp)
    sp.add_argument("--theta", type=float, default=0.0, help="probed direction")
    sp.add_argument("--center", type=parse_complex, default=None,
                    help="Taylor expansion center for the radius scan")
    sp.add_argument("--q", type=parse_complex, default=None,
                    help="chord start for truncated-contour diagnostics")
    sp.add_argument("--r", type=parse_complex, default=None,
                    help="chord end for truncated-contour diagnostics")
    sp.add_argument("--g-source", dest="g_source", choices=("auto", "oracle", "numeric"),
                    default="auto")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_probe)
    registry["probe"] = sp

    sp = sub.add_parser("selftest", help="run the acceptance criteria")
    sp.add_argument("--only", type=_int_list, default=None,
                    help="comma separated criterion numbers, e.g. 1,4,11")
    sp.set_defaults(func=_cmd_selftest)
    registry["selftest"] = sp

    return parser, registry


# flags whose values are often negative numbers, which bare argparse would
# misread as option strings; their values get joined with '='
_VALUE_FLAGS = {
    "--omega", "--z", "--center", "--q", "--r", "--theta", "--thetas",
    "--angles", "--radii", "--alpha", "--h", "--p", "--epsilon", "--delta-min",
}


def _normalize_argv(argv) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _normalize_argv(list(sys.argv[1:] if argv is None else argv))
    parser, registry = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            pairs = _coerce_config(_load_config(args.config))
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        sp = registry[args.command]
        known = {action.dest for action in sp._actions} - {"help", "config", "func"}
        unknown = set(pairs) - known
        if unknown:
            print(
                f"error: unknown config key(s) for {args.command}: {', '.join(sorted(unknown))}",
                file=sys.stderr,
            )
            return 2
        sp.set_defaults(**pairs)
        args = parser.parse_args(argv)  # explicit flags still win over config defaults

    if args.command in ("invert", "roundtrip") and args.p is None:
        parser.error(f"{args.command}: --p is required (flag or config)")
    try:
        return args.func(args, parser)
    except _NUMERIC_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except _REQUEST_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
