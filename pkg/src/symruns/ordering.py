"""Symmetrized depth ordering of a bivariate sample (anti-ranks).

Observations are ranked by their depth in the 2n-point set ``{+X_i, -X_i}``,
deepest first. Exact ties keep ascending original index. Indices are
0-based throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .depth import DepthKind, as_points, depth_profile
from .errors import InputError


@dataclass(frozen=True)
class AntiRanks:
    order: np.ndarray  # order[i] = index of the i-th deepest observation
    depths: np.ndarray  # depth of each observation, in original index order
    kind: DepthKind

    def ordered_depths(self) -> np.ndarray:
        return self.depths[self.order]


def symmetrize(sample) -> np.ndarray:
    """Return ``(X_1, ..., X_n, -X_1, ..., -X_n)``; duplicates (including zeros) are kept."""
    x = as_points(sample, "sample")
    if len(x) < 1:
        raise InputError("sample must contain at least one observation")
    return np.ascontiguousarray(np.vstack([x, -x]))


def order_by_depth(depths) -> np.ndarray:
    """Indices sorted by decreasing depth; exactly equal depths stay in ascending index order."""
    d = np.asarray(depths, dtype=float)
    return np.argsort(-d, kind="stable")


def observation_depths(sample, kind: DepthKind | str, symmetrized: bool = True) -> np.ndarray:
    """Depth of each observation in the symmetrized sample.

    ``symmetrized=False`` measures depth in the raw sample instead; it only
    exists for demonstrations and the tests never use it.
    """
    kind = DepthKind.parse(kind)
    x = as_points(sample, "sample")
    ref = symmetrize(x) if symmetrized else x
    scatter = None
    if kind is DepthKind.SIMPLICIAL_VOLUME_MODIFIED:
        from .estimators import tyler_shape

        scatter = tyler_shape(x)
    return depth_profile(x, ref, kind, scatter=scatter).values


def anti_ranks(sample, kind: DepthKind | str, symmetrized: bool = True) -> AntiRanks:
    kind = DepthKind.parse(kind)
    depths = observation_depths(sample, kind, symmetrized=symmetrized)
    return AntiRanks(order_by_depth(depths), depths, kind)
