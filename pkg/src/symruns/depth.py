"""Halfspace, simplicial and simplicial-volume (Oja) depth on finite point sets.

An empirical set is an (m, 2) array; every row is an atom of mass 1/m and
duplicated rows keep their multiplicity. Halfspace and simplicial depths
are computed as integer counts over a fixed denominator, so equal depths
are bit-equal floats. That matters for the tie rule in
:mod:`symruns.ordering`.

The fast paths live in the compiled kernels (or their numpy fallback, see
:mod:`symruns._backend`). The ``*_bruteforce`` functions are independent
oracles used by the test suite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _backend
from .errors import InputError
from .geometry import simplex_contains_origin


class DepthKind(str, enum.Enum):
    HALFSPACE = "halfspace"
    SIMPLICIAL = "simplicial"
    SIMPLICIAL_VOLUME = "simplicial_volume"
    SIMPLICIAL_VOLUME_MODIFIED = "simplicial_volume_modified"

    @classmethod
    def parse(cls, value: "DepthKind | str") -> "DepthKind":
        if isinstance(value, cls):
            return value
        aliases = {"h": cls.HALFSPACE, "s": cls.SIMPLICIAL, "sv": cls.SIMPLICIAL_VOLUME,
                   "svmod": cls.SIMPLICIAL_VOLUME_MODIFIED}
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise InputError(f"unknown depth kind {value!r}") from None


@dataclass(frozen=True)
class DepthValues:
    values: np.ndarray
    kind: DepthKind

    def __len__(self) -> int:
        return len(self.values)


def as_points(points, name: str = "points") -> np.ndarray:
    """Validate and convert to a C-contiguous float (m, 2) array."""
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        return np.zeros((0, 2))
    if arr.ndim == 1 and arr.shape[0] == 2:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError(f"{name} must have shape (m, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite coordinates")
    return np.ascontiguousarray(arr)


def _check_spd(scatter) -> np.ndarray:
    s = np.asarray(scatter, dtype=float)
    if s.shape != (2, 2) or not np.all(np.isfinite(s)):
        raise InputError("scatter must be a finite 2x2 matrix")
    if s[0, 1] != s[1, 0]:
        if not math.isclose(s[0, 1], s[1, 0], rel_tol=1e-12, abs_tol=1e-15):
            raise InputError("scatter must be symmetric")
    if not (s[0, 0] > 0 and np.linalg.det(s) > 0):
        raise InputError("scatter must be positive definite")
    return s


# -- counts ---------------------------------------------------------------

def halfspace_counts(query, points) -> np.ndarray:
    """Minimal number of atoms in a closed halfplane whose boundary passes through each query."""
    q = as_points(query, "query")
    s = as_points(points)
    if len(s) < 1:
        raise InputError("halfspace depth needs at least one point")
    return _backend.kernels.halfspace_counts(q, s)


def simplicial_counts(query, points) -> np.ndarray:
    """Number of distinct-index triples whose closed triangle contains each query."""
    q = as_points(query, "query")
    s = as_points(points)
    if len(s) < 3:
        raise InputError(f"simplicial depth needs at least 3 points, got {len(s)}")
    return _backend.kernels.simplicial_counts(q, s)


def oja_mean_areas(query, points) -> np.ndarray:
    """Average area of the triangles (x, p_i, p_j) over all point pairs i < j."""
    q = as_points(query, "query")
    s = as_points(points)
    m = len(s)
    if m < 2:
        raise InputError(f"simplicial volume depth needs at least 2 points, got {m}")
    sums = _backend.kernels.oja_area_sums(q, s)
    return sums / (m * (m - 1))


# -- depths ---------------------------------------------------------------

def halfspace_depth(x, points) -> float:
    s = as_points(points)
    return float(halfspace_counts(x, s)[0]) / len(s)


def simplicial_depth(x, points) -> float:
    s = as_points(points)
    m = len(s)
    return float(simplicial_counts(x, s)[0]) / math.comb(m, 3)


def oja_depth(x, points, scatter=None) -> float:
    """``1 / (1 + A)`` with A the mean triangle area, scaled by ``det(scatter)^(-1/2)`` if given."""
    area = float(oja_mean_areas(x, points)[0])
    if scatter is not None:
        area /= math.sqrt(np.linalg.det(_check_spd(scatter)))
    return 1.0 / (1.0 + area)


def depth_profile(query, points, kind: DepthKind | str, scatter=None) -> DepthValues:
    kind = DepthKind.parse(kind)
    q = as_points(query, "query")
    s = as_points(points)
    if len(q) == 0:
        return DepthValues(np.zeros(0), kind)
    m = len(s)
    if kind is DepthKind.HALFSPACE:
        values = halfspace_counts(q, s) / m
    elif kind is DepthKind.SIMPLICIAL:
        values = simplicial_counts(q, s) / math.comb(m, 3)
    else:
        if kind is DepthKind.SIMPLICIAL_VOLUME_MODIFIED and scatter is None:
            raise InputError("modified simplicial volume depth needs a scatter matrix")
        area = oja_mean_areas(q, s)
        if scatter is not None:
            area = area / math.sqrt(np.linalg.det(_check_spd(scatter)))
        values = 1.0 / (1.0 + area)
    return DepthValues(np.asarray(values, dtype=float), kind)


# -- oracles --------------------------------------------------------------

def halfspace_depth_bruteforce(x, points) -> float:
    """Direction enumeration: evaluate the closed halfplane count between critical angles.

    The count only changes when the boundary line passes through an atom,
    i.e. at the angles perpendicular to each ``p - x``. The minimum over all
    halfplanes is attained strictly between two consecutive critical angles.
    """
    x = np.asarray(x, dtype=float).reshape(2)
    s = as_points(points)
    m = len(s)
    v = s - x
    nonzero = np.any(v != 0.0, axis=1)
    if not nonzero.any():
        return 1.0
    base = np.arctan2(v[nonzero, 1], v[nonzero, 0])
    crit = np.sort(np.mod(np.concatenate([base + np.pi / 2, base - np.pi / 2]), 2 * np.pi))
    crit = np.unique(crit)
    gaps = np.diff(np.append(crit, crit[0] + 2 * np.pi))
    mids = crit + gaps / 2
    best = m
    for ang, gap in zip(mids, gaps):
        if gap < 1e-9:
            continue
        u = np.array([math.cos(ang), math.sin(ang)])
        best = min(best, int(np.count_nonzero(v @ u >= 0.0)))
    return best / m


def simplicial_depth_bruteforce(x, points) -> float:
    """Enumerate every distinct-index triple."""
    x = np.asarray(x, dtype=float).reshape(2)
    s = as_points(points)
    m = len(s)
    if m < 3:
        raise InputError(f"simplicial depth needs at least 3 points, got {m}")
    v = s - x
    hits = sum(
        simplex_contains_origin(v[i], v[j], v[k]) for i, j, k in combinations(range(m), 3)
    )
    return hits / math.comb(m, 3)


def oja_depth_bruteforce(x, points, scatter=None) -> float:
    x = np.asarray(x, dtype=float).reshape(2)
    s = as_points(points)
    pairs = list(combinations(range(len(s)), 2))
    total = 0.0
    for i, j in pairs:
        a = s[i] - x
        b = s[j] - x
        total += abs(a[0] * b[1] - a[1] * b[0]) / 2.0
    area = total / len(pairs)
    if scatter is not None:
        area /= math.sqrt(np.linalg.det(_check_spd(scatter)))
    return 1.0 / (1.0 + area)
