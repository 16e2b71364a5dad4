"""Command-line interface.

stdout carries only the machine-readable result (JSON or CSV); logs go to
stderr. Exit codes: 0 success, 2 usage or input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys

import numpy as np

from . import competitors as comp
from .depth import DepthKind, depth_profile
from .errors import InputError, NumericalError
from .harness import ExperimentConfig, default_threads, emit_table, run_experiment
from .ordering import symmetrize
from .runs import depth_runs_test

log = logging.getLogger("symruns")

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 2, 3

METHODS = (
    "depth-runs-h", "depth-runs-s", "depth-runs-sv",
    "marden1", "marden2", "marden1e", "marden2e",
    "bar", "bare", "cassart", "ppg", "ppr", "mcwilliams",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def read_points(path: str) -> np.ndarray:
    """Read a point file: header ``x,y`` (bivariate) or ``x`` (univariate), one point per line."""
    try:
        fh = open(path, encoding="utf-8", newline="") if path != "-" else sys.stdin
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    with fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise InputError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if header not in (["x", "y"], ["x"]):
        raise InputError(f"{path}: line 1: expected header 'x,y' or 'x', got {','.join(rows[0])!r}")
    width = len(header)
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != width:
            raise InputError(f"{path}: line {lineno}: expected {width} field(s), got {len(row)}")
        try:
            values = [float(c) for c in row]
        except ValueError:
            raise InputError(f"{path}: line {lineno}: cannot parse {','.join(row)!r} as numbers") from None
        if not all(math.isfinite(v) for v in values):
            raise InputError(f"{path}: line {lineno}: non-finite value")
        points.append(values)
    if not points:
        raise InputError(f"{path}: no observations")
    return np.asarray(points, dtype=float)


def _parse_center(text: str) -> np.ndarray:
    try:
        parts = [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"--center must look like 'x,y', got {text!r}") from None
    if not all(math.isfinite(v) for v in parts):
        raise InputError("--center must be finite")
    return np.asarray(parts)


def _run_method(method: str, data: np.ndarray, alpha: float):
    if method == "mcwilliams":
        if data.shape[1] != 1:
            raise InputError("mcwilliams needs a univariate file (header 'x')")
        return comp.mcwilliams_test(data[:, 0], alpha)
    if data.shape[1] != 2:
        raise InputError(f"{method} needs a bivariate file (header 'x,y')")
    if method.startswith("depth-runs-"):
        return depth_runs_test(data, method.rsplit("-", 1)[1], alpha)
    if method in ("marden1", "marden2", "marden1e", "marden2e"):
        return comp.marden_test(data, alpha, two_sided=method[6] == "2",
                                standardize_shape=method.endswith("e"))
    if method in ("bar", "bare"):
        return comp.baringhaus_test(data, alpha, standardize_shape=method == "bare")
    if method == "cassart":
        return comp.cassart_test(data, alpha)
    return comp.projection_pursuit_test(data, "skewness" if method == "ppg" else "mcwilliams", alpha)


def cmd_test(args) -> int:
    data = read_points(args.input)
    center = _parse_center(args.center) if args.center else np.zeros(data.shape[1])
    if len(center) != data.shape[1]:
        raise InputError(f"--center has {len(center)} coordinate(s), data has {data.shape[1]}")
    report = _run_method(args.method, data - center, args.alpha)
    json.dump(report.to_dict(), sys.stdout)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_depth(args) -> int:
    data = read_points(args.input)
    if data.shape[1] != 2:
        raise InputError("depth needs a bivariate file (header 'x,y')")
    ref = symmetrize(data) if args.symmetrize else data
    values = depth_profile(data, ref, DepthKind.parse(args.depth)).values
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["index", "x", "y", "depth"])
    for i, ((x, y), d) in enumerate(zip(data, values)):
        w.writerow([i, repr(float(x)), repr(float(y)), repr(float(d))])
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    threads = args.threads if args.threads is not None else default_threads()
    table = run_experiment(cfg, threads=threads)
    payload = emit_table(table, args.format)
    if args.out and args.out != "-":
        with open(args.out, "wb") as fh:
            fh.write(payload)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return EXIT_OK


def cmd_calibrate(args) -> int:
    value = comp.calibrate_baringhaus(args.n, args.reps, args.alpha, args.seed,
                                      standardize_shape=args.elliptical)
    json.dump({"n": args.n, "alpha": args.alpha, "reps": args.reps, "seed": args.seed,
               "elliptical": args.elliptical, "critical_value": value}, sys.stdout)
    sys.stdout.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="symruns", description="Depth-based runs tests for bivariate central symmetry.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("test", help="run one test on a point file, print a JSON report")
    t.add_argument("input", help="CSV file with header 'x,y' (or 'x' for mcwilliams); '-' for stdin")
    t.add_argument("--method", choices=METHODS, default="depth-runs-h")
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--center", help="symmetry center 'x,y' subtracted before testing (default 0,0)")
    t.set_defaults(func=cmd_test)

    d = sub.add_parser("depth", help="print each observation's depth as CSV")
    d.add_argument("input")
    d.add_argument("--depth", choices=("h", "s", "sv"), default="h")
    d.add_argument("--symmetrize", action="store_true", help="measure depth in {+x, -x}")
    d.set_defaults(func=cmd_depth)

    s = sub.add_parser("simulate", help="run a Monte Carlo experiment config, print a rejection table")
    s.add_argument("--config", required=True)
    s.add_argument("--out", help="output path (default stdout)")
    s.add_argument("--threads", type=int, help="worker processes (default $SYMRUNS_THREADS or 1)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("calibrate", help="simulate a Baringhaus critical value")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--reps", type=int, default=5000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--elliptical", action="store_true", help="calibrate the Tyler-standardized variant")
    c.set_defaults(func=cmd_calibrate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
