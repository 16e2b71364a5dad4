"""Normal-law helpers and the common test report."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from statistics import NormalDist

from .errors import InputError

_STD = NormalDist()


def norm_cdf(z: float) -> float:
    """Standard normal cdf via ``erfc`` (accurate in both tails)."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def norm_ppf(p: float) -> float:
    """Standard normal quantile."""
    if not 0.0 < p < 1.0:
        raise InputError(f"probability must be in (0, 1), got {p}")
    return _STD.inv_cdf(p)


def chi2_upper_quantile(df: int, alpha: float) -> float:
    """Upper ``alpha`` quantile of chi-square with 1 or 2 degrees of freedom (closed forms)."""
    check_alpha(alpha)
    if df == 1:
        return norm_ppf(1.0 - alpha / 2.0) ** 2
    if df == 2:
        return -2.0 * math.log(alpha)
    raise InputError(f"only 1 or 2 degrees of freedom are supported, got {df}")


def chi2_sf(x: float, df: int) -> float:
    if x <= 0.0:
        return 1.0
    if df == 1:
        return math.erfc(math.sqrt(x / 2.0))
    if df == 2:
        return math.exp(-x / 2.0)
    raise InputError(f"only 1 or 2 degrees of freedom are supported, got {df}")


def check_alpha(alpha: float) -> float:
    if not (isinstance(alpha, (int, float)) and 0.0 < alpha < 1.0):
        raise InputError(f"alpha must be in (0, 1), got {alpha!r}")
    return float(alpha)


@dataclass(frozen=True)
class TestReport:
    """Outcome of one hypothesis test.

    ``reject`` always follows the named method's decision rule at ``alpha``;
    ``p_value`` is computed under the same (asymptotic or simulated) null law.
    """

    __test__ = False  # not a pytest class

    method: str
    n: int
    statistic: float
    standardized: float
    p_value: float
    alpha: float
    reject: bool

    def to_dict(self) -> dict:
        return asdict(self)
