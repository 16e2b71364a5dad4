import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symruns.errors import InputError
from symruns.runs import (
    RunsStatistic,
    depth_runs_test,
    runs_indicators,
    runs_statistic,
    runs_statistic_k,
    sign_flip_runs_test,
    standardize,
    weighted_runs_statistic,
)


def test_forced_order_example():
    pts = [(1, 0), (-1, 1), (-1, -1), (0, 1)]
    assert runs_statistic_k(pts, k=2, ordering=[0, 1, 2, 3]) == 2


def test_upper_halfplane_sample_has_one_run(rng):
    x = rng.standard_normal((40, 2))
    x[:, 1] = np.abs(x[:, 1]) + 0.1
    assert runs_statistic(x, "h").R == 1


def test_three_points_containing_origin():
    assert runs_statistic([(1, 0), (-1, 1), (-1, -1)], "h").R == 2


def test_small_samples_are_degenerate():
    rs = runs_statistic([(1, 0), (0, 1)], "h")
    assert rs == RunsStatistic(1, 2, rs.kind, degenerate=True)
    with pytest.raises(InputError):
        depth_runs_test([(1, 0), (0, 1)])


@pytest.mark.parametrize(
    "R, n, z",
    [(20, 100, -1.14885), (1, 3, -0.30151), (10, 100, -3.2378)],
)
def test_standardize_examples(R, n, z):
    assert standardize(R, n) == pytest.approx(z, abs=1e-4)


def test_z_zero_unattainable_for_n100():
    assert (100 + 2) / 4 == 25.5


def test_decision_examples(monkeypatch):
    import symruns.runs as runs_mod

    for R, reject in ((20, False), (10, True)):
        monkeypatch.setattr(runs_mod, "runs_statistic", lambda s, k, R=R: RunsStatistic(R, 100, k))
        rep = depth_runs_test(np.ones((100, 2)), "h", 0.05)
        assert rep.reject is reject
        assert rep.p_value == pytest.approx(0.5 * math.erfc(-rep.standardized / math.sqrt(2)))


def test_k1_examples():
    assert runs_statistic_k([1, -2, 3], k=1) == 3
    assert runs_statistic_k([1, 2, 3, 4], k=1) == 1


def test_k2_reduces_to_standard(rng):
    x = rng.standard_normal((30, 2))
    assert runs_statistic_k(x, "s", k=2) == runs_statistic(x, "s").R


def test_k3_needs_ordering(rng):
    with pytest.raises(InputError):
        runs_statistic_k(rng.standard_normal((10, 3)), k=3)


def test_weighted_examples(rng):
    x = rng.standard_normal((30, 2))
    assert weighted_runs_statistic(x, "h", np.ones(28)) == runs_statistic(x, "h").R
    pts = [(1, 0), (-1, 1), (-1, -1)]
    assert weighted_runs_statistic(pts, "h", [0.5]) == 1.5


def test_weighted_emphasises_outer_window():
    # deepest first: two upper-halfplane points, then one below that closes a triangle
    pts = np.array([[0.1, 0.2], [-0.2, 0.1], [0.3, 0.4], [5.0, 5.0], [-5.0, 4.0], [0.5, -9.0]])
    ind = runs_indicators(pts[np.argsort(-np.arange(6), kind="stable")[::-1]])
    assert ind.tolist() == [False, False, False, True]
    w_up = np.array([1.0, 2.0, 3.0, 4.0])
    assert weighted_runs_statistic(pts, "h", w_up) >= weighted_runs_statistic(pts, "h", w_up[::-1])


def test_weighted_rejects_bad_weights(rng):
    with pytest.raises(InputError):
        weighted_runs_statistic(rng.standard_normal((5, 2)), "h", [1, 1])
    with pytest.raises(InputError):
        weighted_runs_statistic(rng.standard_normal((5, 2)), "h", [1, -1, 1])


@pytest.mark.parametrize("kind", ["h", "s", "sv"])
def test_permutation_invariance_small_samples(rng, kind):
    # n = 4, all 24 orderings. Depths always permute along with the sample;
    # R itself is only order-free when no two depths tie (the tie rule uses
    # the input index).
    from symruns.ordering import observation_depths

    for _ in range(20):
        x = rng.standard_normal((4, 2))
        d = observation_depths(x, kind)
        R = runs_statistic(x, kind).R
        tie_free = len(np.unique(d)) == 4
        for p in permutations(range(4)):
            p = list(p)
            assert np.array_equal(observation_depths(x[p], kind), d[p])
            if tie_free:
                assert runs_statistic(x[p], kind).R == R


def test_sv_permutation_invariance_n50(rng):
    x = rng.standard_normal((50, 2))
    R = runs_statistic(x, "sv").R
    for _ in range(100):
        assert runs_statistic(x[rng.permutation(50)], "sv").R == R


def test_sign_flip_calibration_k3(rng):
    x = rng.standard_normal((40, 3))
    order = np.argsort(np.linalg.norm(x, axis=1))
    rep = sign_flip_runs_test(x, 3, order, n_resamples=199, seed=1)
    assert 0 < rep.p_value <= 1
    assert rep.method == "sign-flip-runs-k3"
    again = sign_flip_runs_test(x, 3, order, n_resamples=199, seed=1)
    assert again == rep


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_R_bounds(seed):
    x = np.random.default_rng(seed).standard_normal((20, 2))
    assert 1 <= runs_statistic(x, "h").R <= 19


def test_indicator_lag2_uncorrelated_under_null():
    rng = np.random.default_rng(99)
    a, b = [], []
    for _ in range(600):
        x = rng.standard_normal((40, 2))
        from symruns.ordering import anti_ranks

        ind = runs_indicators(x[anti_ranks(x, "h").order]).astype(float)
        a.extend(ind[2:])
        b.extend(ind[:-2])
    a, b = np.array(a), np.array(b)
    cov = np.mean((a - a.mean()) * (b - b.mean()))
    se = a.std() * b.std() / math.sqrt(len(a))
    assert abs(cov) < 3 * se * 1.5  # pairs overlap within a sample, inflate the iid SE


def test_null_rejection_rate_rough():
    rng = np.random.default_rng(5)
    rej = sum(depth_runs_test(rng.standard_normal((100, 2)), "sv").reject for _ in range(300))
    assert 0.005 < rej / 300 < 0.11
