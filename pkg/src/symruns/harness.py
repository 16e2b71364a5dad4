"""Declarative Monte Carlo experiments producing rejection-frequency tables.

Each replication ``r`` at grid position ``e`` draws its kernel sample and its
skewing uniforms from streams derived from ``(seed, e, r)``, so results do
not depend on how replications are split across worker processes. Every
configured test sees the same sample, and per-worker integer counts are
summed in a fixed order.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable

import numpy as np

from . import competitors as comp
from .datagen import (
    ContaminationSpec,
    KernelSpec,
    SkewSpec,
    apply_contamination,
    apply_skew,
    make_rng,
    sample_kernel,
)
from .depth import DepthKind
from .errors import InputError, NumericalError
from .estimators import tyler_shape
from .runs import depth_runs_test
from .stats import check_alpha

log = logging.getLogger(__name__)

TEST_IDS = (
    "depth-runs-h", "depth-runs-s", "depth-runs-sv",
    "marden1", "marden2", "marden1e", "marden2e",
    "bar", "bare", "cassart", "ppg", "ppr",
)

_KERNEL_STREAM = 0
_SKEW_STREAM = 1
DEFAULT_CALIBRATION_REPS = 5000
THREADS_ENV = "SYMRUNS_THREADS"


@dataclass(frozen=True)
class ExperimentConfig:
    kernel: KernelSpec
    skew: SkewSpec  # j is ignored; the grid below supplies the intensities
    j_grid: tuple[float, ...]
    n: int = 100
    reps: int = 1000
    alpha: float = 0.05
    tests: tuple[str, ...] = TEST_IDS
    seed: int = 0
    contamination: ContaminationSpec | None = None
    calibration_reps: int = DEFAULT_CALIBRATION_REPS
    n_angles: int = 720
    name: str = ""

    def __post_init__(self):
        if self.reps < 1:
            raise InputError(f"reps must be >= 1, got {self.reps}")
        if self.n < 3:
            raise InputError(f"n must be >= 3, got {self.n}")
        check_alpha(self.alpha)
        object.__setattr__(self, "tests", tuple(self.tests))
        unknown = [t for t in self.tests if t not in TEST_IDS]
        if unknown:
            raise InputError(f"unknown test identifiers {unknown}; choose from {list(TEST_IDS)}")
        if not self.tests:
            raise InputError("at least one test is required")
        grid = tuple(self.j_grid)
        if not grid or any(j < 0 for j in grid):
            raise InputError("j_grid must be a nonempty list of nonnegative intensities")
        object.__setattr__(self, "j_grid", grid)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise InputError(f"unknown config fields {sorted(extra)}")
        missing = {"kernel", "skew", "j_grid"} - set(d)
        if missing:
            raise InputError(f"missing config fields {sorted(missing)}")
        kw = dict(d)
        try:
            kw["kernel"] = KernelSpec.from_dict(d["kernel"])
            skew = dict(d["skew"])
            skew.pop("j", None)
            kw["skew"] = SkewSpec(**skew)
            if d.get("contamination") is not None:
                kw["contamination"] = ContaminationSpec.from_dict(d["contamination"])
            return cls(**kw)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"invalid config: {exc}") from exc

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kernel": self.kernel.to_dict(),
            "skew": {"mechanism": self.skew.mechanism.value, "delta": list(self.skew.delta)},
            "j_grid": list(self.j_grid),
            "contamination": None if self.contamination is None else self.contamination.to_dict(),
            "n": self.n,
            "reps": self.reps,
            "alpha": self.alpha,
            "tests": list(self.tests),
            "seed": self.seed,
            "calibration_reps": self.calibration_reps,
            "n_angles": self.n_angles,
        }


@dataclass(frozen=True)
class TableRow:
    test: str
    j: float
    reps: int
    rejections: int
    failures: int = 0

    @property
    def frequency(self) -> float:
        return self.rejections / self.reps


@dataclass(frozen=True)
class RejectionTable:
    rows: tuple[TableRow, ...]
    metadata: dict = field(default_factory=dict, compare=True)

    def frequency(self, test: str, j) -> float:
        return self.row(test, j).frequency

    def row(self, test: str, j) -> TableRow:
        for r in self.rows:
            if r.test == test and r.j == j:
                return r
        raise KeyError((test, j))

    def frequencies(self, test: str) -> list[float]:
        return [r.frequency for r in self.rows if r.test == test]


# -- per-sample evaluation -------------------------------------------------

class _SampleContext:
    """Lazily shared quantities so tests on one sample reuse Tyler's shape and the pursuit angle."""

    def __init__(self, x: np.ndarray, n_angles: int):
        self.x = x
        self.n_angles = n_angles
        self._shape = None
        self._theta = None

    @property
    def shape(self):
        if self._shape is None:
            self._shape = tyler_shape(self.x)
        return self._shape

    @property
    def theta(self):
        if self._theta is None:
            self._theta = comp.projection_direction(self.x, self.n_angles)
        return self._theta


def _runner(test_id: str, crit: dict) -> Callable[[_SampleContext, float], bool]:
    def depth(kind):
        return lambda c, a: depth_runs_test(c.x, kind, a).reject

    table = {
        "depth-runs-h": depth(DepthKind.HALFSPACE),
        "depth-runs-s": depth(DepthKind.SIMPLICIAL),
        "depth-runs-sv": depth(DepthKind.SIMPLICIAL_VOLUME),
        "marden1": lambda c, a: comp.marden_test(c.x, a).reject,
        "marden2": lambda c, a: comp.marden_test(c.x, a, two_sided=True).reject,
        "marden1e": lambda c, a: comp.marden_test(c.x, a, standardize_shape=True, shape=c.shape).reject,
        "marden2e": lambda c, a: comp.marden_test(
            c.x, a, two_sided=True, standardize_shape=True, shape=c.shape).reject,
        "bar": lambda c, a: comp.baringhaus_test(c.x, a, critical_value=crit["bar"]).reject,
        "bare": lambda c, a: comp.baringhaus_test(
            c.x, a, standardize_shape=True, critical_value=crit["bare"], shape=c.shape).reject,
        "cassart": lambda c, a: comp.cassart_test(c.x, a, shape=c.shape).reject,
        "ppg": lambda c, a: comp.projection_pursuit_test(
            c.x, "skewness", a, c.n_angles, theta=c.theta).reject,
        "ppr": lambda c, a: comp.projection_pursuit_test(
            c.x, "mcwilliams", a, c.n_angles, theta=c.theta).reject,
    }
    return table[test_id]


def generate_sample(cfg: ExperimentConfig, grid_index: int, rep: int) -> np.ndarray:
    """The sample seen by every test at grid position ``grid_index``, replication ``rep``."""
    j = cfg.j_grid[grid_index]
    z = sample_kernel(cfg.kernel, cfg.n, make_rng(cfg.seed, grid_index, rep, _KERNEL_STREAM))
    x = apply_skew(z, replace(cfg.skew, j=j), make_rng(cfg.seed, grid_index, rep, _SKEW_STREAM))
    return apply_contamination(x, cfg.contamination)


def _run_chunk(cfg: ExperimentConfig, crit: dict, grid_index: int, start: int, stop: int):
    runners = [(t, _runner(t, crit)) for t in cfg.tests]
    rejections = dict.fromkeys(cfg.tests, 0)
    failures = dict.fromkeys(cfg.tests, 0)
    for rep in range(start, stop):
        ctx = _SampleContext(generate_sample(cfg, grid_index, rep), cfg.n_angles)
        for test_id, run in runners:
            try:
                rejections[test_id] += bool(run(ctx, cfg.alpha))
            except (InputError, NumericalError, np.linalg.LinAlgError) as exc:
                failures[test_id] += 1
                log.debug("%s failed at j index %d rep %d: %s", test_id, grid_index, rep, exc)
    return grid_index, start, rejections, failures


def critical_values(cfg: ExperimentConfig) -> dict:
    """Baringhaus critical values for the configured tests, calibrated once per run."""
    crit = {}
    for test_id, ellipt in (("bar", False), ("bare", True)):
        if test_id in cfg.tests:
            crit[test_id] = comp.calibrate_baringhaus(
                cfg.n, cfg.calibration_reps, cfg.alpha, cfg.seed, standardize_shape=ellipt)
    return crit


def default_threads() -> int:
    value = os.environ.get(THREADS_ENV)
    if value is None:
        return 1
    try:
        threads = int(value)
    except ValueError as exc:
        raise InputError(f"{THREADS_ENV} must be an integer, got {value!r}") from exc
    if threads < 1:
        raise InputError(f"{THREADS_ENV} must be >= 1, got {threads}")
    return threads


def run_experiment(cfg: ExperimentConfig, threads: int | None = None,
                   chunk_size: int = 50) -> RejectionTable:
    """Run every (j, replication) pair and count rejections per (test, j).

    ``threads`` sets the number of worker processes (default: the
    ``SYMRUNS_THREADS`` environment variable, else 1). It changes wall time
    only; the table is identical for any value.
    """
    threads = default_threads() if threads is None else int(threads)
    if threads < 1:
        raise InputError(f"threads must be >= 1, got {threads}")
    crit = critical_values(cfg)
    tasks = [
        (e, start, min(start + chunk_size, cfg.reps))
        for e in range(len(cfg.j_grid))
        for start in range(0, cfg.reps, chunk_size)
    ]
    if threads == 1 or len(tasks) == 1:
        results = [_run_chunk(cfg, crit, *t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_chunk, cfg, crit, *t) for t in tasks]
            results = [f.result() for f in futures]

    rej = {(t, e): 0 for t in cfg.tests for e in range(len(cfg.j_grid))}
    fail = dict(rej)
    for e, _, rejections, failures in sorted(results, key=lambda r: (r[0], r[1])):
        for t in cfg.tests:
            rej[t, e] += rejections[t]
            fail[t, e] += failures[t]
    rows = tuple(
        TableRow(t, cfg.j_grid[e], cfg.reps, rej[t, e], fail[t, e])
        for t in cfg.tests
        for e in range(len(cfg.j_grid))
    )
    metadata = {"config": cfg.to_dict(), "critical_values": crit}
    return RejectionTable(rows, metadata)


# -- serialization ------------------------------------------------------------

CSV_COLUMNS = ("test", "j", "reps", "rejections", "frequency", "failures")


def _fmt_j(j) -> str:
    j = float(j)
    return str(int(j)) if j.is_integer() else repr(j)


def emit_table(table: RejectionTable, fmt: str = "csv") -> bytes:
    """Serialize a table; frequencies are printed with four decimals."""
    fmt = fmt.lower()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in table.rows:
            w.writerow([r.test, _fmt_j(r.j), r.reps, r.rejections, f"{r.frequency:.4f}", r.failures])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        rows = []
        for r in table.rows:
            d = asdict(r)
            d["frequency"] = f"{r.frequency:.4f}"
            rows.append({k: d[k] for k in CSV_COLUMNS})
        doc = {"rows": rows, "metadata": table.metadata}
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")
    raise InputError(f"unknown table format {fmt!r}")


def parse_table(data: bytes | str, fmt: str = "json") -> RejectionTable:
    """Inverse of :func:`emit_table` (the CSV form carries no metadata)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if fmt == "json":
        doc = json.loads(data)
        raw, metadata = doc["rows"], doc.get("metadata", {})
    elif fmt == "csv":
        raw, metadata = list(csv.DictReader(io.StringIO(data))), {}
    else:
        raise InputError(f"unknown table format {fmt!r}")
    rows = []
    for d in raw:
        row = TableRow(str(d["test"]), float(d["j"]), int(d["reps"]), int(d["rejections"]), int(d["failures"]))
        if f"{row.frequency:.4f}" != str(d["frequency"]):
            raise InputError(f"frequency {d['frequency']} inconsistent with {row.rejections}/{row.reps}")
        rows.append(row)
    return RejectionTable(tuple(rows), metadata)
