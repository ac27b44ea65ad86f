"""Command line front end: accuracy and term surveys, method comparison,
Taylor-grid generation and verification of the embedded reference tables.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import gridtaylor, registry, reftables, survey
from .errors import DomainError, FormatError, GridBuildError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4

# grid rectangle covered by gridgen, whatever the stride
GRID_RE = (-33.0, 18.0)
GRID_IM = 36.0


def _param(text: str) -> tuple:
    key, sep, val = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError("expected key=value, got %r" % text)
    return key.strip(), val.strip()


def _domain_args(p: argparse.ArgumentParser, method: bool = True) -> None:
    if method:
        p.add_argument("--method", required=True, help="method id (see 'methods')")
    p.add_argument("--m", type=int, default=0, help="index m (default 0)")
    d = survey.DEFAULT_DOMAIN
    p.add_argument("--re-min", type=float, default=d[0])
    p.add_argument("--re-max", type=float, default=d[1])
    p.add_argument("--im-min", type=float, default=d[2])
    p.add_argument("--im-max", type=float, default=d[3])
    p.add_argument("--step", type=float, default=survey.DEFAULT_STEP)
    p.add_argument("--target-digits", type=float, default=None)
    p.add_argument("--param", type=_param, action="append", default=[],
                   metavar="KEY=VAL", help="method parameter (repeatable)")
    p.add_argument("--grid-file", default=None, help="Taylor grid file for gridtaylor")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fm-survey", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    _domain_args(sub.add_parser("survey", help="digits of accuracy over a rectangle (CSV)"))
    _domain_args(sub.add_parser("terms", help="terms used over a rectangle (CSV + maximum)"))
    cp = sub.add_parser("compare", help="summary table for several methods")
    _domain_args(cp, method=False)
    cp.add_argument("--method", action="append", required=True,
                    help="method id, optionally id:key=val,key=val (repeat for each method)")
    gp = sub.add_parser("gridgen", help="build and save a Taylor grid")
    gp.add_argument("--stride", type=float, default=3.0)
    gp.add_argument("--jmax", type=int, default=30)
    gp.add_argument("--out", required=True)
    tp = sub.add_parser("tables", help="regenerate and verify the embedded tables")
    tp.add_argument("--verify", choices=("gauss-jacobi", "salzer", "square", "fourier", "all"),
                    default="all")
    sub.add_parser("methods", help="list method ids and their parameters")
    return ap


def _config(args, method: str, params=()) -> survey.SurveyConfig:
    params = dict(params)
    if args.grid_file is not None:
        params["grid_file"] = args.grid_file
    return survey.SurveyConfig(
        method=method, m=args.m, params=tuple(sorted(params.items())),
        re_min=args.re_min, re_max=args.re_max, im_min=args.im_min, im_max=args.im_max,
        step=args.step, target_d=args.target_digits, out=args.out)


def _write(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _check_method(cfg: survey.SurveyConfig) -> None:
    # unknown ids and parameters are usage errors, raised before any evaluation
    registry.get(cfg.method).params(cfg.param_dict())


def _cmd_survey(args, terms: bool) -> int:
    cfg = _config(args, args.method, args.param)
    _check_method(cfg)
    grid = survey.run_terms_survey(cfg) if terms else survey.run_accuracy_survey(cfg)
    if cfg.out is not None:
        survey.emit_csv(grid, cfg.out)
    else:
        sys.stdout.write(survey.grid_to_csv(grid))
    s = survey.summarize(grid)
    sys.stderr.write("%s m=%d points=%d min_d=%.2f median_d=%.2f max_terms=%d failures=%d\n"
                     % (cfg.method, cfg.m, len(grid.records), s.min_d, s.median_d,
                        s.max_terms, s.failures))
    return EXIT_OK


def _method_entry(text: str) -> tuple:
    mid, _, rest = text.partition(":")
    params = [_param(kv) for kv in rest.split(",") if kv] if rest else []
    return mid, tuple(params)


def _cmd_compare(args) -> int:
    if args.param:
        raise registry.UsageError("compare takes parameters as --method id:key=val")
    entries = [_method_entry(t) for t in args.method]
    if len(entries) < 2:
        raise registry.UsageError("compare needs at least two --method options")
    base = _config(args, entries[0][0])
    full = []
    for mid, params in entries:
        cfg = _config(args, mid, params)
        _check_method(cfg)
        full.append((mid, cfg.params))
    _write(survey.compare_report(full, base), args.out)
    return EXIT_OK


def _cmd_gridgen(args) -> int:
    s = args.stride
    if not s > 0:
        raise DomainError("stride must be positive")
    spec = gridtaylor.GridSpec(s, math.ceil(GRID_RE[0] / s - 1e-9), math.floor(GRID_RE[1] / s + 1e-9),
                               math.floor(GRID_IM / s + 1e-9), args.jmax)
    grid = gridtaylor.build_grid(spec)
    gridtaylor.save_grid(grid, args.out)
    sys.stderr.write("wrote %d nodes, J_max=%d, stride %g to %s\n"
                     % (spec.node_count, spec.J_max, s, args.out))
    return EXIT_OK


def _cmd_tables(args) -> int:
    which = args.verify
    ok = True
    lines = []
    if which in ("gauss-jacobi", "all"):
        worst = reftables.verify_gauss_jacobi()
        good = worst >= 24.0
        lines.append("gauss-jacobi n=20 k=2,4: worst agreement %.2f digits %s"
                     % (worst, "ok" if good else "FAIL"))
        ok &= good
    if which in ("salzer", "all"):
        pairing, moment = reftables.verify_salzer()
        good = pairing == 0.0 and moment < 1e-6
        lines.append("salzer n=16: pairing defect %.1e, moment defect %.1e %s"
                     % (pairing, moment, "ok" if good else "FAIL"))
        ok &= good
    if which in ("square", "all"):
        res = reftables.verify_square_coefficients()
        bad = [(m, n) for m, n, g in res if not g]
        lines.append("square-series coefficients m=0,2 n<=20: %d/%d match %s"
                     % (len(res) - len(bad), len(res), "ok" if not bad else "FAIL %r" % bad))
        ok &= not bad
    if which in ("fourier", "all"):
        for m, N, got, printed, ratio in reftables.verify_fourier():
            good = ratio <= 2.0
            lines.append("fourier m=%d N=%d: deviation %.3e printed %.3e ratio %.2f %s"
                         % (m, N, got, printed, ratio, "ok" if good else "FAIL"))
            ok &= good
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else 1


def _cmd_methods(args) -> int:
    for mid, meth in registry.METHODS.items():
        ps = ", ".join("%s=%s" % kv for kv in meth.defaults.items()) or "-"
        sys.stdout.write("%-26s %-34s %s\n" % (mid, ps, meth.description))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command in ("survey", "terms"):
            return _cmd_survey(args, args.command == "terms")
        if args.command == "compare":
            return _cmd_compare(args)
        if args.command == "gridgen":
            return _cmd_gridgen(args)
        if args.command == "tables":
            return _cmd_tables(args)
        return _cmd_methods(args)
    except registry.UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    except (DomainError, GridBuildError) as exc:
        sys.stderr.write("domain error: %s\n" % exc)
        return EXIT_DOMAIN
    except (OSError, FormatError) as exc:
        sys.stderr.write("I/O error: %s\n" % exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
