"""Pure numpy versions of the depth kernels.

Each function takes ``query`` of shape (q, 2) and ``points`` of shape (m, 2)
and works on the difference vectors ``v = points - x``. The predicates are
the same as in the compiled module; only the counting strategy differs
(dense pairwise matrices here, angular sort plus two pointers there).
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def _pairwise(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    vx = v[:, 0]
    vy = v[:, 1]
    cross = vx[:, None] * vy[None, :] - vy[:, None] * vx[None, :]
    dot = vx[:, None] * vx[None, :] + vy[:, None] * vy[None, :]
    return cross, dot


def _split(x: np.ndarray, points: np.ndarray) -> tuple[np.ndarray, int]:
    v = points - x
    zero = (v[:, 0] == 0.0) & (v[:, 1] == 0.0)
    return v[~zero], int(zero.sum())


def halfspace_counts(query: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Smallest number of points in a closed halfplane bounded by a line through each query."""
    out = np.empty(len(query), dtype=np.int64)
    for k, x in enumerate(query):
        v, z = _split(x, points)
        m = len(v)
        if m == 0:
            out[k] = z
            continue
        cross, dot = _pairwise(v)
        # points at angular offset in (0, pi] from each direction
        ahead = ((cross > 0) | ((cross == 0) & (dot < 0))).sum(axis=1)
        out[k] = z + int(np.minimum(ahead, m - ahead).min())
    return out


def simplicial_counts(query: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Number of distinct-index triples whose closed triangle contains each query."""
    m_all = len(points)
    total = m_all * (m_all - 1) * (m_all - 2) // 6
    out = np.empty(len(query), dtype=np.int64)
    for k, x in enumerate(query):
        v, _ = _split(x, points)
        m = len(v)
        if m < 3:
            out[k] = total
            continue
        cross, dot = _pairwise(v)
        later = np.arange(m)[None, :] > np.arange(m)[:, None]
        window = (cross > 0) | ((cross == 0) & (dot > 0) & later)
        kp = window.sum(axis=1).astype(np.int64)
        out[k] = total - int((kp * (kp - 1) // 2).sum())
    return out


def oja_area_sums(query: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Sum over point pairs of ``|cross(p_i - x, p_j - x)|`` (twice the triangle areas)."""
    out = np.empty(len(query), dtype=float)
    for k, x in enumerate(query):
        v = points - x
        cross, _ = _pairwise(v)
        out[k] = 0.5 * np.abs(cross).sum()
    return out
