"""Depth-based simplicial runs tests for central symmetry of bivariate data."""

from ._backend import BACKEND
from .competitors import (
    CompetitorKind,
    baringhaus_statistic,
    baringhaus_test,
    calibrate_baringhaus,
    cassart_statistic,
    cassart_test,
    marden_statistic,
    marden_test,
    mcwilliams_test,
    projection_pursuit_test,
)
from .datagen import (
    ContaminationSpec,
    Family,
    KernelSpec,
    Mechanism,
    SkewSpec,
    apply_contamination,
    apply_skew,
    make_rng,
    sample_kernel,
)
from .depth import (
    DepthKind,
    depth_profile,
    halfspace_depth,
    oja_depth,
    simplicial_depth,
)
from .errors import InputError, NumericalError, TylerConvergenceError
from .estimators import inv_sqrt, spatial_signs_and_norm_ranks, tyler_shape
from .geometry import origin_sign_vectors, orient, simplex_contains_origin, simplex_contains_origin_k
from .harness import ExperimentConfig, RejectionTable, emit_table, parse_table, run_experiment
from .ordering import AntiRanks, anti_ranks, symmetrize
from .runs import (
    RunsStatistic,
    depth_runs_test,
    runs_statistic,
    runs_statistic_k,
    sign_flip_runs_test,
    standardize,
    weighted_runs_statistic,
)
from .stats import TestReport

__version__ = "0.1.0"
