"""Planar and k-dimensional predicates used throughout the package.

Containment is decided on the *closed* simplex: a query lying on an edge
(or on the segment hull of a degenerate triangle) counts as contained.
All planar predicates are built on the same floating cross product,
``a[0] * b[1] - a[1] * b[0]``, so that the fast depth kernels and the
brute-force oracles agree bit for bit.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Sequence

import numpy as np

Point2 = tuple[float, float]
SignVector3 = tuple[int, int, int]


def _cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def orient(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> int:
    """Sign of ``(b - a) x (c - a)``: +1 counterclockwise, -1 clockwise, 0 collinear."""
    return _sign(_cross(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1]))


def simplex_contains_origin(
    a: Sequence[float], b: Sequence[float], c: Sequence[float]
) -> bool:
    """True iff the origin lies in the closed triangle with vertices a, b, c.

    Uses the signs of the three origin-based cross products. They are exact
    negations of each other under any vertex swap, which makes the result
    invariant under vertex permutation and under ``(a, b, c) -> (-a, -b, -c)``.
    """
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    d1 = _cross(ax, ay, bx, by)
    d2 = _cross(bx, by, cx, cy)
    d3 = _cross(cx, cy, ax, ay)
    if d1 == 0.0 and d2 == 0.0 and d3 == 0.0:
        # all three on one line through the origin (or coincident)
        pts = ((ax, ay), (bx, by), (cx, cy))
        if any(px == 0.0 and py == 0.0 for px, py in pts):
            return True
        for (px, py), (qx, qy) in combinations(pts, 2):
            if px * qx + py * qy < 0.0:
                return True
        return False
    has_neg = d1 < 0.0 or d2 < 0.0 or d3 < 0.0
    has_pos = d1 > 0.0 or d2 > 0.0 or d3 > 0.0
    return not (has_neg and has_pos)


def contains_origin_many(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Vectorised :func:`simplex_contains_origin` over rows of three (N, 2) arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    d1 = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    d2 = b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0]
    d3 = c[:, 0] * a[:, 1] - c[:, 1] * a[:, 0]
    has_neg = (d1 < 0) | (d2 < 0) | (d3 < 0)
    has_pos = (d1 > 0) | (d2 > 0) | (d3 > 0)
    out = ~(has_neg & has_pos)
    flat = (d1 == 0) & (d2 == 0) & (d3 == 0)
    if flat.any():
        idx = np.flatnonzero(flat)
        out[idx] = [simplex_contains_origin(a[i], b[i], c[i]) for i in idx]
    return out


def origin_sign_vectors(
    x: Sequence[float], y: Sequence[float], z: Sequence[float]
) -> list[SignVector3]:
    """All sign vectors ``s`` with the origin in the closed triangle ``(s1 x, s2 y, s3 z)``.

    For a triple in general position from the origin (no line through the
    origin holds two of the points) exactly two vectors come back, and they
    are negatives of each other. Degenerate triples are enumerated as well;
    the caller decides what to make of the result.
    """
    out = []
    for s in product((1, -1), repeat=3):
        a = (s[0] * x[0], s[0] * x[1])
        b = (s[1] * y[0], s[1] * y[1])
        c = (s[2] * z[0], s[2] * z[1])
        if simplex_contains_origin(a, b, c):
            out.append(s)
    return out


def _origin_in_hull(points: np.ndarray, tol: float) -> bool:
    q, k = points.shape
    if q == 1:
        return bool(np.all(np.abs(points[0]) <= tol))
    system = np.vstack([points.T, np.ones((1, q))])
    rhs = np.zeros(k + 1)
    rhs[-1] = 1.0
    if np.linalg.matrix_rank(system) == q:
        w, *_ = np.linalg.lstsq(system, rhs, rcond=None)
        residual = np.max(np.abs(system @ w - rhs))
        return bool(residual <= tol and np.all(w >= -tol))
    # affinely dependent: the hull is the union of the hulls of the q-1 subsets
    return any(
        _origin_in_hull(points[list(sub)], tol)
        for sub in combinations(range(q), q - 1)
    )


def simplex_contains_origin_k(vertices: Sequence[Sequence[float]]) -> bool:
    """True iff the origin lies in the closed hull of ``k + 1`` points in R^k.

    Solves the barycentric system (weights nonnegative, summing to one).
    Singular systems are resolved by recursing over the boundary faces.
    """
    pts = np.atleast_2d(np.asarray(vertices, dtype=float))
    if pts.ndim != 2 or pts.shape[0] != pts.shape[1] + 1:
        raise ValueError(
            f"expected k+1 vertices in dimension k, got {pts.shape[0]} "
            f"vertices of dimension {pts.shape[1]}"
        )
    if not np.all(np.isfinite(pts)):
        raise ValueError("vertices must be finite")
    tol = 1e-12 * max(1.0, float(np.max(np.abs(pts))))
    return _origin_in_hull(pts, tol)
