"""Tyler's shape matrix about the origin, its inverse square root, spatial signs and norm ranks."""

from __future__ import annotations

import logging

import numpy as np

from .depth import as_points
from .errors import InputError, TylerConvergenceError

log = logging.getLogger(__name__)

MAX_SHAPE_CONDITION = 1e10


def drop_zeros(sample: np.ndarray, what: str = "observation") -> np.ndarray:
    # a norm that underflows to zero has no usable direction either
    zero = np.linalg.norm(sample, axis=1) == 0.0
    if zero.any():
        log.warning("dropping %d %s(s) at the origin", int(zero.sum()), what)
        return sample[~zero]
    return sample


def tyler_residual(sample, shape) -> float:
    """Max-entry norm of ``mean(x x' / x' S^-1 x) - S / 2``."""
    x = drop_zeros(as_points(sample))
    inv = np.linalg.inv(shape)
    q = np.einsum("ij,jk,ik->i", x, inv, x)
    lhs = (x.T / q) @ x / len(x)
    return float(np.max(np.abs(lhs - shape / 2.0)))


def tyler_shape(sample, tol: float = 1e-13, max_iter: int = 500) -> np.ndarray:
    """Tyler's shape estimator with location fixed at the origin, normalised to trace 2.

    Iterates ``S <- (2/n) sum x x' / (x' S^-1 x)`` from the identity, rescaling
    to trace 2 after every step, until the largest entry change drops below
    ``tol``.

    Raises
    ------
    InputError
        Fewer than 3 usable observations, or all of them on one line
        through the origin.
    TylerConvergenceError
        No convergence within ``max_iter`` steps.
    """
    x = drop_zeros(as_points(sample))
    n = len(x)
    if n < 3:
        raise InputError(f"Tyler's estimator needs at least 3 nonzero observations, got {n}")
    u = x / np.linalg.norm(x, axis=1)[:, None]
    if np.linalg.matrix_rank(u.T @ u) < 2:
        raise InputError("observations lie on a single line through the origin")
    shape = np.eye(2)
    step = np.inf
    reason = f"no convergence in {max_iter} steps"
    for _ in range(max_iter):
        inv = np.linalg.inv(shape)
        q = np.einsum("ij,jk,ik->i", u, inv, u)
        new = (u.T / q) @ u
        new = 0.5 * (new + new.T)
        new *= 2.0 / np.trace(new)
        step = float(np.max(np.abs(new - shape)))
        shape = new
        if step < tol:
            if np.linalg.cond(shape) > MAX_SHAPE_CONDITION:
                # the fixed point does not exist; the iteration slides toward a line
                reason = "the estimate degenerates toward a single line"
                break
            return shape
        if not np.all(np.isfinite(shape)) or np.linalg.det(shape) <= 0:
            reason = "the iterate became singular"
            break
    try:
        residual = tyler_residual(x, shape)
    except np.linalg.LinAlgError:
        residual = np.inf
    raise TylerConvergenceError(
        f"Tyler iteration failed: {reason} (last step {step:.3g})",
        last=shape,
        residual=residual if np.isfinite(residual) else np.inf,
    )


def inv_sqrt(shape) -> np.ndarray:
    """Symmetric positive definite square root of ``shape^-1`` (closed-form 2x2 eigendecomposition)."""
    s = np.asarray(shape, dtype=float)
    if s.shape != (2, 2) or not np.all(np.isfinite(s)):
        raise InputError("shape must be a finite 2x2 matrix")
    a, b, c = s[0, 0], 0.5 * (s[0, 1] + s[1, 0]), s[1, 1]
    half_tr = 0.5 * (a + c)
    rad = np.hypot(0.5 * (a - c), b)
    lam1, lam2 = half_tr + rad, half_tr - rad
    if not (lam2 > 0):
        raise InputError("shape must be positive definite")
    if b == 0.0:
        return np.diag([1.0 / np.sqrt(a), 1.0 / np.sqrt(c)])
    # eigenvector for lam1, taken from whichever row is better conditioned
    if a >= c:
        v1 = np.array([lam1 - c, b])
    else:
        v1 = np.array([b, lam1 - a])
    v1 /= np.linalg.norm(v1)
    v2 = np.array([-v1[1], v1[0]])
    return (np.outer(v1, v1) / np.sqrt(lam1)) + (np.outer(v2, v2) / np.sqrt(lam2))


def spatial_signs_and_norm_ranks(sample) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors ``x / |x|`` and 1-based ranks of ``|x|`` (ties by index); zeros dropped."""
    x = drop_zeros(as_points(sample))
    norms = np.linalg.norm(x, axis=1)
    signs = x / norms[:, None]
    ranks = np.empty(len(x), dtype=np.int64)
    ranks[np.argsort(norms, kind="stable")] = np.arange(1, len(x) + 1)
    return signs, ranks


def standardize(sample, shape=None) -> np.ndarray:
    """Premultiply every observation by ``shape^(-1/2)``; Tyler's shape by default."""
    x = as_points(sample)
    if shape is None:
        shape = tyler_shape(x)
    return x @ inv_sqrt(shape).T
