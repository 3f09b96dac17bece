"""Command-line interface: ``hardy-cone {constant,sweep,verify,bessel-zero}``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.
csv/json output is deterministic (12 significant digits, LF endings); the
run manifest with wall time goes to ``<out>.manifest.json`` when ``--out``
is given, otherwise to stderr, so stdout stays byte-identical across runs.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import time
from enum import Enum

from . import __version__
from .eigensolver import DEFAULT_TOL, ConeSpec
from .exceptions import HardyConeError
from .hardy import mu_cone, sweep, worker_count
from .special_functions import BesselSpec, first_bessel_zero
from .suite import SLACK_TOL, SuiteError, load_suite, run_suite

MAX_CLI_DIM = 12

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2

SWEEP_COLUMNS = ["gamma", "lambda1", "mu", "lower_convex", "lower_bessel", "upper_bessel", "slack_min", "err_est"]
CONSTANT_COLUMNS = ["dim", "gamma", "mu", "lambda1", "classical_part", "err_est"]
VERIFY_COLUMNS = ["line", "family", "check", "value", "target", "slack", "residual", "err_est", "passed", "note"]
BESSEL_COLUMNS = ["nu", "b1", "residual"]


class OutputFormat(str, Enum):
    HUMAN = "human"
    CSV = "csv"
    JSON = "json"


class UsageError(Exception):
    pass


def fmt_value(v):
    """Canonical text of one cell."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def json_value(v):
    if isinstance(v, float):
        if not math.isfinite(v):
            return None
        return float(format(v, ".12g"))
    return v


def render(rows, columns, fmt, footer=()):
    """Render rows (dicts) as text; ``footer`` lines become csv comments."""
    out = io.StringIO()
    if fmt is OutputFormat.JSON:
        json.dump([{c: json_value(r.get(c)) for c in columns} for r in rows], out, indent=1)
        out.write("\n")
        return out.getvalue()
    if fmt is OutputFormat.CSV:
        out.write(",".join(columns) + "\n")
        for r in rows:
            out.write(",".join(_csv_cell(fmt_value(r.get(c))) for c in columns) + "\n")
        for line in footer:
            out.write(f"# {line}\n")
        return out.getvalue()
    cells = [[fmt_value(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(x.rjust(w) for x, w in zip(row, widths)).rstrip() + "\n")
    for line in footer:
        out.write(line + "\n")
    return out.getvalue()


def _csv_cell(s):
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


# ---------------------------------------------------------------------------
# argument handling


def _angle(args, value):
    return math.radians(value) if args.degrees else value


def _check_dim(dim):
    if not 2 <= dim <= MAX_CLI_DIM:
        raise UsageError(f"--dim must lie in [2, {MAX_CLI_DIM}], got {dim}")


def _check_gamma(g, name="--gamma"):
    if not 0.0 < g < math.pi:
        raise UsageError(f"{name} must lie in (0, pi) radians, got {g}")


def _check_tol(tol):
    if not 0.0 < tol < 1.0:
        raise UsageError(f"--tol must lie in (0, 1), got {tol}")


def cmd_constant(args):
    _check_dim(args.dim)
    gamma = _angle(args, args.gamma)
    _check_gamma(gamma)
    _check_tol(args.tol)
    h = mu_cone(ConeSpec(args.dim, gamma), args.tol)
    row = {"dim": args.dim, "gamma": gamma, "mu": h.mu, "lambda1": h.lambda1,
           "classical_part": h.classical_part, "err_est": h.error_estimate}
    return EXIT_OK, [row], CONSTANT_COLUMNS, [], {"err_est": [h.error_estimate]}


def cmd_sweep(args):
    _check_dim(args.dim)
    gmin, gmax = _angle(args, args.gamma_min), _angle(args, args.gamma_max)
    _check_gamma(gmin, "--gamma-min")
    _check_gamma(gmax, "--gamma-max")
    if not gmin < gmax:
        raise UsageError("--gamma-min must be below --gamma-max")
    if args.steps < 2:
        raise UsageError(f"--steps must be >= 2, got {args.steps}")
    _check_tol(args.tol)
    table = sweep(args.dim, gmin, gmax, args.steps, args.tol, workers=worker_count())
    rows = []
    for r in table.rows:
        b = r.bounds
        rows.append({
            "gamma": r.gamma, "lambda1": r.lambda1, "mu": r.mu,
            "lower_convex": None if b is None else b.lower_convex,
            "lower_bessel": None if b is None else b.lower_bessel,
            "upper_bessel": None if b is None else b.upper_bessel,
            "slack_min": None if b is None else b.slack_min,
            "err_est": r.error_estimate,
        })
    failed = [r for r in table.rows if r.failed]
    ok = table.monotone and table.bounds_ok and not failed
    footer = [f"monotone={fmt_value(table.monotone)} bounds_ok={fmt_value(table.bounds_ok)} "
              f"failed_rows={len(failed)}"]
    for r in failed:
        footer.append(f"row gamma={fmt_value(r.gamma)} failed: {r.error}")
    extra = {"err_est": [r.error_estimate for r in table.rows], "monotone": table.monotone,
             "bounds_ok": table.bounds_ok, "violations": table.violations}
    return (EXIT_OK if ok else EXIT_CHECK), rows, SWEEP_COLUMNS, footer, extra


def cmd_verify(args):
    _check_tol(args.tol)
    try:
        records = load_suite(args.suite)
    except OSError as exc:
        raise UsageError(f"cannot read suite: {exc}") from None
    except SuiteError as exc:
        raise UsageError(f"invalid suite: {exc}") from None
    results = run_suite(records, args.tol, workers=worker_count())
    rows = [r.row() for r in results]
    n_fail = sum(not r.passed for r in results)
    footer = [f"checks={len(results)} failed={n_fail} slack_tol={fmt_value(SLACK_TOL)}"]
    for r in results:
        if not r.passed:
            footer.append(f"FAILED {r.record.label}: slack={fmt_value(r.slack)} "
                          f"residual={fmt_value(r.residual)} {r.note}".rstrip())
    extra = {"suite": args.suite or "<bundled>", "err_est": [r.err_est for r in results]}
    return (EXIT_CHECK if n_fail else EXIT_OK), rows, VERIFY_COLUMNS, footer, extra


def cmd_bessel_zero(args):
    if not args.nu >= -0.5:
        raise UsageError(f"--nu must be >= -0.5, got {args.nu}")
    z = first_bessel_zero(BesselSpec(args.nu))
    row = {"nu": args.nu, "b1": z.value, "residual": z.residual}
    return EXIT_OK, [row], BESSEL_COLUMNS, [], {"err_est": [z.residual]}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative eigenvalue tolerance")
    common.add_argument("--fmt", choices=[f.value for f in OutputFormat], default="human")
    common.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="hardy-cone", description="Optimal Hardy constants of cones.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constant", parents=[common], help="mu and lambda_1 of one cone")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--gamma", type=float, required=True)
    c.set_defaults(func=cmd_constant)

    s = sub.add_parser("sweep", parents=[common], help="aperture sweep with bounds and monotonicity")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--gamma-min", type=float, required=True)
    s.add_argument("--gamma-max", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", parents=[common], help="run an inequality/identity trial suite")
    v.add_argument("--suite", help="suite file (default: bundled suite)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bessel-zero", parents=[common], help="first positive zero of J_nu")
    b.add_argument("--nu", type=float, required=True)
    b.set_defaults(func=cmd_bessel_zero)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help/--version, 2 otherwise
        return int(exc.code or 0)
    fmt = OutputFormat(args.fmt)
    t0 = time.perf_counter()
    try:
        code, rows, columns, footer, extra = args.func(args)
    except UsageError as exc:
        print(f"hardy-cone {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HardyConeError as exc:
        print(f"hardy-cone {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK

    text = render(rows, columns, fmt, footer)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    manifest = {
        "command": args.command,
        "parameters": params,
        "tolerances": {"tol": args.tol, "slack_tol": SLACK_TOL},
        "tool_version": __version__,
        "wall_time_s": round(time.perf_counter() - t0, 6),
        "rows": len(rows),
        "exit_code": code,
    }
    manifest.update({k: [json_value(x) for x in v] if isinstance(v, list) else v for k, v in extra.items()})

    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
        with open(args.out + ".manifest.json", "w", newline="\n") as fh:
            json.dump(manifest, fh, indent=1)
            fh.write("\n")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
        if fmt is not OutputFormat.HUMAN:
            print(json.dumps(manifest), file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
