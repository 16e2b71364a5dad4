import math

import numpy as np
import pytest
from scipy import stats

from symruns import datagen
from symruns.datagen import (
    OUTLIER_PAIR,
    ContaminationSpec,
    Family,
    KernelSpec,
    Mechanism,
    SkewSpec,
    apply_contamination,
    apply_skew,
    in_cones,
    make_rng,
    sample_kernel,
    t3_cdf,
)
from symruns.errors import InputError, NumericalError

C1 = ((0.0, 0.5),)


@pytest.mark.parametrize(
    "point, inside",
    [((1.0, 0.5), True), ((1.0, 1.0), False), ((-1.0, -0.5), True), ((0.0, 1.0), False)],
)
def test_cone_membership(point, inside):
    assert in_cones(np.array([point]), C1)[0] == inside


def test_vertical_point_counts_as_right_angle():
    assert in_cones(np.array([(0.0, -2.0)]), ((-1.4, 0.2),))[0]
    assert in_cones(np.array([(0.0, 2.0)]), ((1.4, 0.2),))[0]


@pytest.mark.parametrize("family", list(Family))
def test_seed_determinism(family):
    spec = KernelSpec(family, cones=C1 if family is Family.CAUCHY else ())
    a = sample_kernel(spec, 50, 17)
    b = sample_kernel(spec, 50, 17)
    assert a.shape == (50, 2)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_kernel(spec, 50, 18))


def test_streams_are_keyed():
    a = make_rng(5, 0, 1).random(4)
    assert np.array_equal(a, make_rng(5, 0, 1).random(4))
    assert not np.array_equal(a, make_rng(5, 1, 0).random(4))
    g = np.random.default_rng(0)
    assert make_rng(g) is g


def test_cone_samples_stay_in_cone():
    spec = KernelSpec(Family.CAUCHY, cones=((0.0, 0.5), (1.2, 0.1)))
    z = sample_kernel(spec, 500, 3)
    assert in_cones(z, spec.cones).all()


def test_spiral_norm_bound():
    z = sample_kernel(KernelSpec(Family.SPIRAL), 5000, 1)
    assert np.linalg.norm(z, axis=1).max() <= 1 + 10 * math.pi


def test_normal_kernel_covariance():
    shape = ((2.0, 1.0), (1.0, 3.0))
    z = sample_kernel(KernelSpec(Family.NORMAL, shape), 200_000, 4)
    assert np.allclose(np.cov(z.T), shape, atol=0.05)


def test_cauchy_kernel_marginal():
    z = sample_kernel(KernelSpec(Family.CAUCHY), 20_000, 6)
    assert stats.kstest(z[:, 0], stats.cauchy.cdf).pvalue > 0.001


def test_t_kernel_marginal():
    z = sample_kernel(KernelSpec(Family.T, df=3.0), 20_000, 6)
    assert stats.kstest(z[:, 1], stats.t(3).cdf).pvalue > 0.001


def test_cone_rejection_cap(monkeypatch):
    monkeypatch.setattr(datagen, "MAX_CONE_PROPOSALS", 10)
    spec = KernelSpec(Family.NORMAL, cones=((0.3, 1e-12),))
    with pytest.raises(NumericalError):
        sample_kernel(spec, 5, 0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"shape": ((1.0, 2.0), (2.0, 1.0))},
        {"shape": ((1.0, 0.5), (0.0, 1.0))},
        {"cones": ((0.0, 0.0),)},
        {"cones": ((0.0, math.pi / 2),)},
        {"family": "gamma"},
        {"family": "t", "df": 0.0},
    ],
)
def test_kernel_spec_validation(kwargs):
    with pytest.raises((InputError, ValueError)):
        KernelSpec(**kwargs)


def test_kernel_spec_round_trip():
    spec = KernelSpec(Family.CAUCHY, ((2.0, 1.0), (1.0, 3.0)), ((0.0, 0.5),))
    assert KernelSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(InputError):
        KernelSpec.from_dict({"family": "normal", "scale": 2})


def test_sample_size_validated():
    with pytest.raises(InputError):
        sample_kernel(KernelSpec(), 0)


def test_t3_cdf_matches_reference():
    t = np.linspace(-20, 20, 401)
    assert np.allclose(t3_cdf(t), stats.t(3).cdf(t), atol=1e-14)


def test_sinh_arcsinh_example():
    x = apply_skew([(0.0, 0.0)], SkewSpec(Mechanism.SINH_ARCSINH, (0.12, 0.1), 1))
    assert x[0, 0] == pytest.approx(math.sinh(0.12), rel=1e-15)
    assert x[0, 0] == pytest.approx(0.120288, abs=1e-6)
    assert x[0, 1] == pytest.approx(math.sinh(0.1))


def test_shift_example(rng):
    z = rng.standard_normal((10, 2))
    x = apply_skew(z, SkewSpec(Mechanism.SHIFT, (0.0, 0.04), 2))
    assert np.allclose(x - z, [0.0, 0.08])


@pytest.mark.parametrize("mech", [Mechanism.SHIFT, Mechanism.SINH_ARCSINH, Mechanism.NONE])
def test_deterministic_mechanisms_identity_at_zero(rng, mech):
    z = rng.standard_normal((10, 2))
    assert np.array_equal(apply_skew(z, SkewSpec(mech, (0.3, -0.2), 0)), z)


@pytest.mark.parametrize("mech", [Mechanism.AZZALINI_NORMAL, Mechanism.AZZALINI_CAUCHY])
def test_azzalini_zero_intensity_is_fair_coin(mech):
    z = np.random.default_rng(1).standard_normal((20_000, 2))
    x = apply_skew(z, SkewSpec(mech, (1.0, 2.0), 0), seed=9)
    kept = np.all(x == z, axis=1)
    assert np.all(kept | np.all(x == -z, axis=1))
    assert stats.binomtest(int(kept.sum()), len(z), 0.5).pvalue > 0.001


def test_azzalini_normal_keep_probability():
    # every point has delta'z = 1, so keep probability is Phi(j)
    z = np.tile([(1.0, 0.0)], (20_000, 1))
    x = apply_skew(z, SkewSpec(Mechanism.AZZALINI_NORMAL, (1.0, 0.0), 1), seed=2)
    kept = np.mean(x[:, 0] > 0)
    assert kept == pytest.approx(stats.norm.cdf(1.0), abs=0.01)


def test_azzalini_cauchy_keep_probability():
    z = np.tile([(1.0, 1.0)], (20_000, 1))
    x = apply_skew(z, SkewSpec(Mechanism.AZZALINI_CAUCHY, (1.0, 0.0), 2), seed=2)
    expected = stats.t(3).cdf(2.0 * math.sqrt(3.0 / 3.0))
    assert np.mean(x[:, 0] > 0) == pytest.approx(expected, abs=0.01)


def test_azzalini_uses_its_own_stream(rng):
    z = rng.standard_normal((30, 2))
    spec = SkewSpec(Mechanism.AZZALINI_NORMAL, (1.0, 1.0), 1)
    assert np.array_equal(apply_skew(z, spec, 4), apply_skew(z, spec, 4))


def test_skew_spec_validation():
    with pytest.raises(InputError):
        SkewSpec(Mechanism.SHIFT, (0.0, 0.04), -1)
    with pytest.raises(InputError):
        SkewSpec(Mechanism.SHIFT, (0.0, 0.04, 1.0), 1)


def test_outlier_pair(rng):
    z = rng.standard_normal((100, 2))
    x = apply_contamination(z, OUTLIER_PAIR)
    assert np.array_equal(x[-2:], [(10.0, 10.0), (11.0, 1.0)])
    assert np.array_equal(x[:-2], z[:-2])
    assert np.array_equal(apply_contamination(x, OUTLIER_PAIR), x)


def test_empty_contamination_is_identity(rng):
    z = rng.standard_normal((5, 2))
    assert np.array_equal(apply_contamination(z, ContaminationSpec()), z)
    assert np.array_equal(apply_contamination(z, None), z)


def test_contamination_errors():
    with pytest.raises(InputError):
        apply_contamination(np.zeros((1, 2)), OUTLIER_PAIR)
    with pytest.raises(InputError):
        ContaminationSpec(((1, (0.0, 0.0)), (1, (1.0, 1.0))))
    with pytest.raises(InputError):
        ContaminationSpec(((0, (0.0, 0.0)),))


def test_contamination_round_trip():
    assert ContaminationSpec.from_dict(OUTLIER_PAIR.to_dict()) == OUTLIER_PAIR


@pytest.mark.parametrize(
    "kernel",
    [
        KernelSpec(Family.NORMAL),
        KernelSpec(Family.CAUCHY, cones=((0.0, 0.5),)),
        KernelSpec(Family.SPIRAL),
    ],
    ids=["normal", "cauchy-cone", "spiral"],
)
def test_unskewed_kernels_give_nominal_size(kernel):
    from symruns.harness import ExperimentConfig, run_experiment

    cfg = ExperimentConfig(kernel, SkewSpec(Mechanism.AZZALINI_NORMAL, (1.0, 1.0)), (0,),
                           reps=1000, tests=("depth-runs-h",), seed=77)
    freq = run_experiment(cfg).frequency("depth-runs-h", 0)
    assert abs(freq - 0.05) <= 3 * math.sqrt(0.05 * 0.95 / 1000)
