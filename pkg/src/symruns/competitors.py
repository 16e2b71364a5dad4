"""Competing tests: Marden runs, Baringhaus, Cassart and projection pursuit, plus McWilliams.

Sphericity tests work on spatial signs ordered by Euclidean norm. Their
elliptical variants first standardize the data with Tyler's shape.
Baringhaus' statistic has no usable closed-form null quantile, so its
critical values are simulated under the spherical standard normal
(:func:`calibrate_baringhaus`).
"""

from __future__ import annotations

import enum
import functools
import logging
import math

import numpy as np

from .depth import as_points
from .errors import InputError
from .estimators import drop_zeros, inv_sqrt, spatial_signs_and_norm_ranks, standardize, tyler_shape
from .stats import (
    TestReport,
    check_alpha,
    chi2_sf,
    chi2_upper_quantile,
    norm_cdf,
    norm_ppf,
)

log = logging.getLogger(__name__)


class CompetitorKind(str, enum.Enum):
    MARDEN1_SPHER = "marden1"
    MARDEN2_SPHER = "marden2"
    MARDEN1_ELLIPT = "marden1e"
    MARDEN2_ELLIPT = "marden2e"
    BAR_SPHER = "bar"
    BAR_ELLIPT = "bare"
    CASSART = "cassart"
    PPG = "ppg"
    PPR = "ppr"
    MCWILLIAMS_UNIV = "mcwilliams"


# -- univariate tests ----------------------------------------------------

def mcwilliams_test(data, alpha: float = 0.05) -> TestReport:
    """Runs test for symmetry about zero: order by |x|, count sign runs, reject for few runs."""
    alpha = check_alpha(alpha)
    x = np.asarray(data, dtype=float).ravel()
    if not np.all(np.isfinite(x)):
        raise InputError("data contains non-finite values")
    zeros = x == 0.0
    if zeros.all():
        raise InputError("all observations are zero")
    if zeros.any():
        log.warning("dropping %d zero observation(s)", int(zeros.sum()))
        x = x[~zeros]
    n = len(x)
    if n < 2:
        raise InputError(f"the McWilliams test needs n >= 2 nonzero values, got {n}")
    signs = np.sign(x[np.argsort(np.abs(x), kind="stable")])
    runs = 1 + int(np.count_nonzero(signs[1:] != signs[:-1]))
    z = (2.0 * runs - n) / math.sqrt(n)
    return TestReport("mcwilliams", n, float(runs), z, norm_cdf(z), alpha, z < norm_ppf(alpha))


def skewness_test(data, alpha: float = 0.05, variance: str = "moment") -> TestReport:
    """Two-sided test of zero third central moment.

    ``variance="moment"`` standardizes ``m3`` by its estimated null variance
    ``(m6 - 6 m4 m2 + 9 m2^3) / n``, which is valid for any symmetric law with
    six moments and stays bounded when one observation dominates.
    ``variance="normal"`` uses the normal-theory form ``sqrt(n/6) * m3 / m2^(3/2)``.
    Both agree to first order under normality.
    """
    alpha = check_alpha(alpha)
    x = np.asarray(data, dtype=float).ravel()
    n = len(x)
    if n < 3:
        raise InputError(f"the skewness test needs n >= 3, got {n}")
    c = x - x.mean()
    m2 = float(np.mean(c ** 2))
    if m2 == 0.0:
        raise InputError("all projected values are equal")
    m3 = float(np.mean(c ** 3))
    b1 = m3 / m2 ** 1.5
    if variance == "normal":
        z = math.sqrt(n / 6.0) * b1
    elif variance == "moment":
        m4 = float(np.mean(c ** 4))
        m6 = float(np.mean(c ** 6))
        # equals mean((c^3 - 3 m2 c)^2) / n, so never negative
        v = (m6 - 6.0 * m4 * m2 + 9.0 * m2 ** 3) / n
        z = m3 / math.sqrt(v) if v > 0.0 else 0.0
    else:
        raise InputError(f"unknown variance {variance!r}; use 'moment' or 'normal'")
    p = 2.0 * norm_cdf(-abs(z))
    return TestReport("skewness", n, b1, z, p, alpha, abs(z) > norm_ppf(1.0 - alpha / 2.0))


# -- Marden --------------------------------------------------------------

def marden_statistic(sample, standardize_shape: bool = False, shape=None) -> float:
    """``sqrt(2/n) * sum_i U_{A_i}' U_{A_{i-1}}`` with observations ordered by increasing norm.

    ``shape`` lets callers pass an already computed Tyler shape for the
    elliptical variant.
    """
    x = drop_zeros(as_points(sample, "sample"))
    if standardize_shape:
        x = standardize(x, shape)
    n = len(x)
    if n < 2:
        raise InputError(f"Marden's statistic needs n >= 2, got {n}")
    norms = np.linalg.norm(x, axis=1)
    u = (x / norms[:, None])[np.argsort(norms, kind="stable")]
    return math.sqrt(2.0 / n) * float(np.sum(u[1:] * u[:-1]))


def marden_test(sample, alpha: float = 0.05, two_sided: bool = False,
                standardize_shape: bool = False, shape=None) -> TestReport:
    """One-sided: reject when T > Phi^-1(1 - alpha). Two-sided: reject when T^2 > chi2_1 quantile."""
    alpha = check_alpha(alpha)
    t = marden_statistic(sample, standardize_shape, shape)
    n = len(drop_zeros(as_points(sample)))
    name = ("marden2" if two_sided else "marden1") + ("e" if standardize_shape else "")
    if two_sided:
        return TestReport(name, n, t * t, t, chi2_sf(t * t, 1), alpha,
                          t * t > chi2_upper_quantile(1, alpha))
    return TestReport(name, n, t, t, 1.0 - norm_cdf(t), alpha, t > norm_ppf(1.0 - alpha))


# -- Baringhaus ----------------------------------------------------------

def baringhaus_h(t):
    return (t - 0.25) / (17.0 / 8.0 - t)


def baringhaus_statistic(sample, standardize_shape: bool = False, shape=None) -> float:
    """``(1/n) sum_{i,j} h(U_i'U_j) min(1 - (R_i-1)/n, 1 - (R_j-1)/n)``, diagonal included."""
    x = drop_zeros(as_points(sample, "sample"))
    if standardize_shape:
        x = standardize(x, shape)
    n = len(x)
    if n < 1:
        raise InputError("Baringhaus' statistic needs at least one observation")
    u, ranks = spatial_signs_and_norm_ranks(x)
    w = 1.0 - (ranks - 1) / n
    g = np.clip(u @ u.T, -1.0, 1.0)
    return float(np.sum(baringhaus_h(g) * np.minimum(w[:, None], w[None, :])) / n)


def calibrate_baringhaus(n: int, reps: int = 5000, alpha: float = 0.05, seed: int = 0,
                         standardize_shape: bool = False) -> float:
    """Empirical upper-``alpha`` quantile of B under the spherical standard normal."""
    alpha = check_alpha(alpha)
    if reps < 1000:
        raise InputError(f"calibration needs reps >= 1000, got {reps}")
    if n < 3 and standardize_shape:
        raise InputError("the elliptical variant needs n >= 3")
    return float(_null_quantile(_baringhaus_null_draws(n, reps, seed, standardize_shape), alpha))


@functools.lru_cache(maxsize=32)
def _baringhaus_null_draws(n: int, reps: int, seed: int, standardize_shape: bool) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xBA2,)))
    draws = np.empty(reps)
    for r in range(reps):
        draws[r] = baringhaus_statistic(rng.standard_normal((n, 2)), standardize_shape)
    draws.setflags(write=False)
    return draws


def _null_quantile(draws: np.ndarray, alpha: float) -> float:
    # smallest simulated value with at most alpha of the draws strictly above it
    ordered = np.sort(draws)
    k = math.ceil((1.0 - alpha) * len(ordered))
    return float(ordered[min(max(k, 1), len(ordered)) - 1])


def baringhaus_test(sample, alpha: float = 0.05, standardize_shape: bool = False,
                    critical_value: float | None = None, reps: int = 5000,
                    seed: int = 0, shape=None) -> TestReport:
    """Reject for large B. The critical value is simulated when not supplied."""
    alpha = check_alpha(alpha)
    x = drop_zeros(as_points(sample, "sample"))
    b = baringhaus_statistic(x, standardize_shape, shape)
    n = len(x)
    draws = None
    if critical_value is None:
        draws = _baringhaus_null_draws(n, reps, seed, standardize_shape)
        critical_value = _null_quantile(draws, alpha)
    p = float(np.mean(draws >= b)) if draws is not None else float("nan")
    name = "bare" if standardize_shape else "bar"
    return TestReport(name, n, b, b - critical_value, p, alpha, b > critical_value)


# -- Cassart -------------------------------------------------------------

def cassart_statistic(sample, shape=None) -> float:
    x = drop_zeros(as_points(sample, "sample"))
    n = len(x)
    if n < 3:
        raise InputError(f"Cassart's test needs n >= 3, got {n}")
    if shape is None:
        shape = tyler_shape(x)
    z = x @ inv_sqrt(shape).T
    d = np.linalg.norm(z, axis=1)  # equals sqrt(x' S^-1 x)
    u = z / d[:, None]
    s = u ** 2 * np.sign(u)
    m4 = float(np.mean(d ** 4))
    total = (d[:, None] ** 2 * s).sum(axis=0)
    return 8.0 / (3.0 * n * m4) * float(total @ total)


def cassart_test(sample, alpha: float = 0.05, shape=None) -> TestReport:
    """Pseudo-Gaussian ellipticity test: reject when the statistic exceeds the chi2_2 quantile."""
    alpha = check_alpha(alpha)
    q = cassart_statistic(sample, shape)
    n = len(drop_zeros(as_points(sample)))
    return TestReport("cassart", n, q, q, chi2_sf(q, 2), alpha, q > chi2_upper_quantile(2, alpha))


# -- projection pursuit ----------------------------------------------------

def midrange_spread(sample, angles) -> np.ndarray:
    """For each angle, max minus min of the symmetrized midranges of the projections."""
    x = as_points(sample, "sample")
    angles = np.asarray(angles, dtype=float)
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    proj = np.sort(dirs @ x.T, axis=1)
    mid = 0.5 * (proj + proj[:, ::-1])
    return mid.max(axis=1) - mid.min(axis=1)


def projection_direction(sample, n_angles: int = 720) -> float:
    """Grid minimiser of :func:`midrange_spread` over ``[0, pi)``; ties go to the smallest angle."""
    if n_angles < 2:
        raise InputError(f"n_angles must be >= 2, got {n_angles}")
    grid = np.pi * np.arange(n_angles) / n_angles
    return float(grid[int(np.argmin(midrange_spread(sample, grid)))])


def projection_pursuit_test(sample, backend: str = "skewness", alpha: float = 0.05,
                            n_angles: int = 720, theta: float | None = None,
                            skewness_variance: str = "moment") -> TestReport:
    """Univariate symmetry test along the pursuit direction and its normal, each at level alpha/2.

    ``backend`` is ``"skewness"`` (PPG) or ``"mcwilliams"`` (PPR). The overall
    p-value is the Bonferroni one, ``min(1, 2 * min(p1, p2))``; it rejects
    exactly when one of the two runs rejects. A precomputed pursuit angle
    can be passed as ``theta``.
    """
    alpha = check_alpha(alpha)
    x = as_points(sample, "sample")
    if len(x) < 3:
        raise InputError(f"projection pursuit needs n >= 3, got {len(x)}")
    if backend == "skewness":
        def univ(v, a):
            return skewness_test(v, a, skewness_variance)
    elif backend == "mcwilliams":
        univ = mcwilliams_test
    else:
        raise InputError(f"unknown backend {backend!r}")
    if theta is None:
        theta = projection_direction(x, n_angles)
    u1 = np.array([math.cos(theta), math.sin(theta)])
    u2 = np.array([-u1[1], u1[0]])
    first = univ(x @ u1, alpha / 2.0)
    second = univ(x @ u2, alpha / 2.0)
    decisive = first if first.reject or not second.reject else second
    name = "ppg" if backend == "skewness" else "ppr"
    return TestReport(
        name, len(x), decisive.statistic, decisive.standardized,
        min(1.0, 2.0 * min(first.p_value, second.p_value)), alpha,
        first.reject or second.reject,
    )
