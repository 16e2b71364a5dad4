"""Symmetric kernels, skewing mechanisms and contamination for the simulation settings.

Randomness always comes from :func:`make_rng`, which derives an independent
counter-based stream (Philox) from a master seed and a tuple of integer
keys. Replication ``r`` of setting ``e`` therefore gets the same numbers no
matter which worker runs it, or in what order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .depth import as_points
from .errors import InputError, NumericalError
from .stats import norm_cdf

MAX_CONE_PROPOSALS = 1_000_000  # per accepted point


def make_rng(seed, *keys: int) -> np.random.Generator:
    """Generator for stream ``keys`` under master ``seed``. Generators pass through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        ss = np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + keys)
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=keys)
    return np.random.Generator(np.random.Philox(ss))


class Family(str, enum.Enum):
    NORMAL = "normal"
    CAUCHY = "cauchy"
    SPIRAL = "spiral"
    T = "t"


class Mechanism(str, enum.Enum):
    NONE = "none"
    AZZALINI_NORMAL = "azzalini_normal"
    AZZALINI_CAUCHY = "azzalini_cauchy"
    SHIFT = "shift"
    SINH_ARCSINH = "sinh_arcsinh"


@dataclass(frozen=True)
class KernelSpec:
    """Centrally symmetric kernel.

    ``cones`` is a tuple of ``(axis, half_width)`` pairs; a draw is kept when
    ``|arctan(z2 / z1) - axis| <= half_width`` for at least one of them.
    ``df`` is only used by the ``t`` family.
    """

    family: Family = Family.NORMAL
    shape: tuple[tuple[float, float], tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))
    cones: tuple[tuple[float, float], ...] = ()
    df: float = 3.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        s = np.asarray(self.shape, dtype=float)
        if s.shape != (2, 2) or not np.allclose(s, s.T) or np.linalg.eigvalsh(s).min() <= 0:
            raise InputError(f"kernel shape must be a symmetric positive definite 2x2 matrix, got {self.shape}")
        object.__setattr__(self, "shape", tuple(tuple(float(v) for v in row) for row in s))
        cones = tuple((float(a), float(w)) for a, w in self.cones)
        for _, w in cones:
            if not 0.0 < w < math.pi / 2:
                raise InputError(f"cone half-width must lie in (0, pi/2), got {w}")
        object.__setattr__(self, "cones", cones)
        if self.family is Family.T and not self.df > 0:
            raise InputError("t kernel needs df > 0")

    def to_dict(self) -> dict:
        out = {"family": self.family.value, "shape": [list(r) for r in self.shape],
               "cones": [list(c) for c in self.cones]}
        if self.family is Family.T:
            out["df"] = self.df
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "KernelSpec":
        known = {"family", "shape", "cones", "df"}
        extra = set(d) - known
        if extra:
            raise InputError(f"unknown kernel fields {sorted(extra)}")
        kw = dict(d)
        if "shape" in kw:
            kw["shape"] = tuple(tuple(r) for r in kw["shape"])
        if "cones" in kw:
            kw["cones"] = tuple(tuple(c) for c in kw["cones"])
        return cls(**kw)


@dataclass(frozen=True)
class SkewSpec:
    mechanism: Mechanism = Mechanism.NONE
    delta: tuple[float, float] = (0.0, 0.0)
    j: float = 0

    def __post_init__(self):
        object.__setattr__(self, "mechanism", Mechanism(self.mechanism))
        delta = tuple(float(v) for v in self.delta)
        if len(delta) != 2:
            raise InputError("delta must have two components")
        object.__setattr__(self, "delta", delta)
        if self.j < 0:
            raise InputError(f"skewing intensity must be nonnegative, got {self.j}")


@dataclass(frozen=True)
class ContaminationSpec:
    """Points written over the sample, addressed by position from the end (1 = last)."""

    replacements: tuple[tuple[int, tuple[float, float]], ...] = field(default_factory=tuple)

    def __post_init__(self):
        reps = tuple((int(p), (float(pt[0]), float(pt[1]))) for p, pt in self.replacements)
        positions = [p for p, _ in reps]
        if len(set(positions)) != len(positions):
            raise InputError("contamination positions must be distinct")
        if any(p < 1 for p in positions):
            raise InputError("contamination positions count from 1 (the last observation)")
        object.__setattr__(self, "replacements", reps)

    def to_dict(self) -> dict:
        return {"replacements": [[p, list(pt)] for p, pt in self.replacements]}

    @classmethod
    def from_dict(cls, d: dict) -> "ContaminationSpec":
        return cls(tuple((p, tuple(pt)) for p, pt in d.get("replacements", [])))


OUTLIER_PAIR = ContaminationSpec(((2, (10.0, 10.0)), (1, (11.0, 1.0))))


def in_cones(z: np.ndarray, cones) -> np.ndarray:
    """Cone membership of each row; a zero first coordinate counts as angle +-pi/2."""
    z = np.atleast_2d(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        ang = np.arctan(z[:, 1] / z[:, 0])
    vertical = z[:, 0] == 0.0
    ang[vertical] = np.copysign(np.pi / 2, z[vertical, 1])
    keep = np.zeros(len(z), dtype=bool)
    for axis, half_width in cones:
        keep |= np.abs(ang - axis) <= half_width
    return keep


def _draw_unconditional(spec: KernelSpec, size: int, rng: np.random.Generator) -> np.ndarray:
    if spec.family is Family.SPIRAL:
        s = rng.choice((-1.0, 1.0), size=size)
        u = rng.random(size)
        theta = rng.uniform(0.0, np.pi, size)
        r = s * u * (1.0 + 10.0 * theta)
        return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
    chol = np.linalg.cholesky(np.asarray(spec.shape))
    z = rng.standard_normal((size, 2)) @ chol.T
    if spec.family is Family.CAUCHY:
        z /= np.abs(rng.standard_normal(size))[:, None]
    elif spec.family is Family.T:
        z /= np.sqrt(rng.chisquare(spec.df, size) / spec.df)[:, None]
    return z


def sample_kernel(spec: KernelSpec, n: int, seed=0) -> np.ndarray:
    """Draw ``n`` observations from the kernel, cone-conditioned by rejection if cones are set."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    rng = make_rng(seed)
    if not spec.cones:
        return _draw_unconditional(spec, n, rng)
    out = np.empty((n, 2))
    filled = 0
    proposals = 0
    batch = max(64, 4 * n)
    while filled < n:
        z = _draw_unconditional(spec, batch, rng)
        proposals += batch
        keep = z[in_cones(z, spec.cones)]
        take = min(len(keep), n - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
        if filled < n and proposals > MAX_CONE_PROPOSALS * (filled + 1):
            raise NumericalError(
                f"cone rejection sampling accepted {filled} of {proposals} proposals; "
                "check the cone specification"
            )
    return out


_norm_cdf = np.vectorize(norm_cdf, otypes=[float])


def t3_cdf(t):
    """Cdf of Student's t with 3 degrees of freedom (closed form)."""
    t = np.asarray(t, dtype=float)
    s = t / math.sqrt(3.0)
    return 0.5 + (s / (1.0 + s * s) + np.arctan(s)) / np.pi


def apply_skew(sample, spec: SkewSpec, seed=0) -> np.ndarray:
    """Skew a symmetric sample with intensity ``spec.j``.

    Azzalini mechanisms keep ``Z_i`` when ``U_i <= G(j delta' Z_i ...)`` and
    return ``-Z_i`` otherwise, with fresh uniforms from ``seed``. Shift adds
    ``j * delta``; sinh-arcsinh maps each coordinate to
    ``sinh(asinh(z) + j * delta_k)``.
    """
    z = as_points(sample, "sample")
    mech = spec.mechanism
    delta = np.asarray(spec.delta)
    j = spec.j
    if mech is Mechanism.NONE or (j == 0 and mech in (Mechanism.SHIFT, Mechanism.SINH_ARCSINH)):
        # sinh(asinh(z)) is not bit-exact, so intensity zero skips the round trip
        return z.copy()
    if mech is Mechanism.SHIFT:
        return z + j * delta
    if mech is Mechanism.SINH_ARCSINH:
        return np.sinh(np.arcsinh(z) + j * delta)
    u = make_rng(seed).random(len(z))
    lin = j * (z @ delta)
    if mech is Mechanism.AZZALINI_NORMAL:
        keep = u <= _norm_cdf(lin)
    else:
        keep = u <= t3_cdf(lin * np.sqrt(3.0 / (1.0 + np.sum(z * z, axis=1))))
    return np.where(keep[:, None], z, -z)


def apply_contamination(sample, spec: ContaminationSpec | None) -> np.ndarray:
    x = as_points(sample, "sample").copy()
    if spec is None:
        return x
    for pos, point in spec.replacements:
        if pos > len(x):
            raise InputError(f"contamination position {pos} exceeds sample size {len(x)}")
        x[len(x) - pos] = point
    return x
