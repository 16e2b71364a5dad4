"""Simplicial runs statistics and the depth-based runs test for central symmetry.

After ordering the observations from deepest to shallowest in the
symmetrized sample, a *run* starts whenever three consecutively ranked
observations span a closed triangle containing the origin::

    R = 1 + sum_{i=3..n} 1[0 in S(X_{A_i}, X_{A_{i-1}}, X_{A_{i-2}})]

Under central symmetry ``(4R - n - 2) / sqrt(11 n / 3)`` is asymptotically
standard normal, and few runs point to asymmetry (one-sided test).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .depth import DepthKind, as_points
from .errors import InputError
from .geometry import contains_origin_many, simplex_contains_origin_k
from .ordering import anti_ranks
from .stats import TestReport, check_alpha, norm_cdf, norm_ppf

RUNS_VARIANCE = 11.0 / 3.0

_METHOD_NAMES = {
    DepthKind.HALFSPACE: "depth-runs-h",
    DepthKind.SIMPLICIAL: "depth-runs-s",
    DepthKind.SIMPLICIAL_VOLUME: "depth-runs-sv",
    DepthKind.SIMPLICIAL_VOLUME_MODIFIED: "depth-runs-svmod",
}


@dataclass(frozen=True)
class RunsStatistic:
    R: int
    n: int
    kind: DepthKind
    degenerate: bool = False


def runs_indicators(ordered) -> np.ndarray:
    """Indicator of origin containment for each window of three consecutive rows."""
    x = as_points(ordered)
    if len(x) < 3:
        return np.zeros(0, dtype=bool)
    return contains_origin_many(x[2:], x[1:-1], x[:-2])


def runs_statistic(sample, kind: DepthKind | str = DepthKind.HALFSPACE) -> RunsStatistic:
    kind = DepthKind.parse(kind)
    x = as_points(sample, "sample")
    n = len(x)
    if n < 3:
        return RunsStatistic(1, n, kind, degenerate=True)
    order = anti_ranks(x, kind).order
    return RunsStatistic(1 + int(runs_indicators(x[order]).sum()), n, kind)


def weighted_runs_statistic(sample, kind: DepthKind | str, weights) -> float:
    """``1 + sum_i w_i * indicator_i`` over the n - 2 windows, outermost window last."""
    x = as_points(sample, "sample")
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(w) != max(len(x) - 2, 0):
        raise InputError(f"need {max(len(x) - 2, 0)} weights, got shape {w.shape}")
    if np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise InputError("weights must be positive and finite")
    if len(x) < 3:
        return 1.0
    order = anti_ranks(x, kind).order
    return 1.0 + float(w @ runs_indicators(x[order]))


def _univariate_order(values: np.ndarray) -> np.ndarray:
    return np.argsort(np.abs(values), kind="stable")


def runs_statistic_k(sample, kind: DepthKind | str = DepthKind.HALFSPACE, k: int = 2,
                     ordering=None) -> int:
    """Runs count with k-dimensional simplices of k + 1 consecutive observations.

    ``k = 1`` orders by absolute value (the classical univariate runs count),
    ``k = 2`` uses the depth anti-ranks. For ``k >= 3`` an ``ordering`` must be
    supplied; it should not depend on the observations' signs.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    x = np.asarray(sample, dtype=float)
    if k == 1 and x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[1] != k:
        raise InputError(f"sample must have shape (n, {k}), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError("sample contains non-finite values")
    n = len(x)
    if ordering is None:
        if k == 1:
            ordering = _univariate_order(x[:, 0])
        elif k == 2:
            return runs_statistic(x, kind).R
        else:
            raise InputError("k >= 3 needs an explicit ordering")
    order = np.asarray(ordering, dtype=np.int64)
    if sorted(order.tolist()) != list(range(n)):
        raise InputError("ordering must be a permutation of range(n)")
    xo = x[order]
    if k == 2:
        return 1 + int(runs_indicators(xo).sum())
    return 1 + sum(
        simplex_contains_origin_k(xo[i - k:i + 1]) for i in range(k, n)
    )


def standardize(rs: RunsStatistic | int, n: int | None = None) -> float:
    """``(4R - n - 2) / sqrt(11 n / 3)``."""
    if isinstance(rs, RunsStatistic):
        R, n = rs.R, rs.n
    else:
        R = rs
    if n is None or n < 3:
        raise InputError("standardization needs n >= 3")
    return (4.0 * R - n - 2.0) / math.sqrt(RUNS_VARIANCE * n)


def depth_runs_test(sample, kind: DepthKind | str = DepthKind.HALFSPACE,
                    alpha: float = 0.05) -> TestReport:
    """Reject central symmetry about the origin when the standardized runs count is below ``Phi^-1(alpha)``."""
    alpha = check_alpha(alpha)
    kind = DepthKind.parse(kind)
    rs = runs_statistic(sample, kind)
    if rs.n < 3:
        raise InputError(f"the runs test needs n >= 3, got {rs.n}")
    z = standardize(rs)
    return TestReport(
        method=_METHOD_NAMES[kind],
        n=rs.n,
        statistic=float(rs.R),
        standardized=z,
        p_value=norm_cdf(z),
        alpha=alpha,
        reject=z < norm_ppf(alpha),
    )


def sign_flip_runs_test(sample, k: int, ordering, alpha: float = 0.05,
                        n_resamples: int = 999, seed: int = 0) -> TestReport:
    """Calibrate the k-variate runs count by random sign flips of the observations.

    Valid under central symmetry as long as ``ordering`` is invariant under
    flipping the signs of individual observations (as any ordering by depth
    in the symmetrized sample is).
    """
    alpha = check_alpha(alpha)
    x = np.asarray(sample, dtype=float)
    if k == 1 and x.ndim == 1:
        x = x[:, None]
    observed = runs_statistic_k(x, k=k, ordering=ordering)
    rng = np.random.default_rng(seed)
    draws = np.empty(n_resamples)
    for b in range(n_resamples):
        signs = rng.choice((-1.0, 1.0), size=len(x))
        draws[b] = runs_statistic_k(x * signs[:, None], k=k, ordering=ordering)
    p = (1 + np.count_nonzero(draws <= observed)) / (n_resamples + 1)
    sd = draws.std(ddof=1) if n_resamples > 1 else 0.0
    z = (observed - draws.mean()) / sd if sd > 0 else 0.0
    return TestReport(
        method=f"sign-flip-runs-k{k}",
        n=len(x),
        statistic=float(observed),
        standardized=float(z),
        p_value=float(p),
        alpha=alpha,
        reject=bool(p <= alpha),
    )
