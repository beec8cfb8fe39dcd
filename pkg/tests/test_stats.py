import math

import numpy as np
import pytest
from scipy.special import kolmogorov as scipy_kolmogorov
from scipy.stats import ks_2samp, kstest

from lislab.stats import (
    EmpiricalDistribution,
    dkw_band,
    dominance_check,
    ecdf,
    kolmogorov_sf,
    ks_one_sample,
    ks_two_sample,
    mean_ci,
    normal_cdf,
)


def test_ecdf_examples():
    d = EmpiricalDistribution(np.array([1.0, 2.0, 3.0]))
    assert ecdf(d, 0.5) == 0.0
    assert ecdf(d, 3.0) == 1.0
    assert ecdf(d, 2.0) == pytest.approx(2 / 3)
    # right-continuity: value just below a sample point excludes it
    assert ecdf(d, 2.0 - 1e-12) == pytest.approx(1 / 3)


def test_empirical_distribution_sorts():
    d = EmpiricalDistribution(np.array([3.0, 1.0, 2.0]))
    assert d.samples.tolist() == [1.0, 2.0, 3.0]
    assert d.count == 3


def test_ks_two_sample_hand_merge():
    stat, _ = ks_two_sample(np.array([1.0, 2.0]), np.array([1.5, 2.5]))
    assert stat == pytest.approx(0.5)


def test_ks_two_sample_identical_and_disjoint():
    a = np.arange(10.0)
    assert ks_two_sample(a, a)[0] == 0.0
    stat, _ = ks_two_sample(a, a + 100.0)
    assert stat == 1.0


def test_ks_two_sample_symmetry_and_range():
    rng = np.random.default_rng(0)
    a, b = rng.normal(size=200), rng.normal(0.3, size=300)
    s1, p1 = ks_two_sample(a, b)
    s2, p2 = ks_two_sample(b, a)
    assert s1 == s2 and p1 == p2
    assert 0.0 <= s1 <= 1.0


def test_ks_two_sample_matches_scipy():
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=400), rng.normal(0.2, 1.1, size=300)
    stat, _ = ks_two_sample(a, b)
    ref = ks_2samp(a, b, method="asymp")
    assert stat == pytest.approx(ref.statistic, abs=1e-12)


def test_ks_one_sample_single_point_at_median():
    stat, _ = ks_one_sample(np.array([0.0]), lambda x: normal_cdf(x))
    assert stat == pytest.approx(0.5)


def test_ks_one_sample_matches_scipy():
    rng = np.random.default_rng(2)
    a = rng.normal(size=500)
    stat, _ = ks_one_sample(a, lambda x: normal_cdf(x))
    ref = kstest(a, "norm")
    assert stat == pytest.approx(ref.statistic, abs=1e-12)


def test_ks_one_sample_calibration():
    # inverse-transform samples from the target law: the 1% Kolmogorov
    # quantile 1.63/sqrt(n) should be exceeded in ~1% of runs
    n, runs = 10_000, 100
    rng = np.random.default_rng(123)
    below = 0
    for _ in range(runs):
        u = rng.random(n)
        stat, _ = ks_one_sample(u, lambda x: np.clip(x, 0.0, 1.0))
        below += stat <= 1.63 / math.sqrt(n)
    assert below >= 98


def test_kolmogorov_sf_vs_scipy():
    for lam in (0.05, 0.2, 0.5, 0.8, 1.0, 1.5, 2.5):
        assert kolmogorov_sf(lam) == pytest.approx(float(scipy_kolmogorov(lam)), abs=1e-9)
    assert kolmogorov_sf(0.0) == 1.0
    assert kolmogorov_sf(10.0) == pytest.approx(0.0, abs=1e-12)


def test_dominance_shift_cases():
    rng = np.random.default_rng(3)
    b = rng.normal(size=5000)
    assert dominance_check(b + 1.0, b).dominates
    assert dominance_check(b, b).dominates
    res = dominance_check(b - 1.0, b, alpha=1e-3)
    assert not res.dominates
    assert res.worst_margin > 0.1


def test_dominance_needs_samples():
    with pytest.raises(ValueError):
        dominance_check(np.arange(10.0), np.arange(200.0))


def test_dkw_band_value():
    assert dkw_band(10_000, 1e-3) == pytest.approx(
        math.sqrt(math.log(2000.0) / 20_000.0)
    )


def test_mean_ci_hand_values():
    mean, half = mean_ci(np.array([0.0, 2.0]), z=1.0)
    assert mean == pytest.approx(1.0)
    assert half == pytest.approx(1.0)  # unbiased std sqrt(2) / sqrt(2)
    mean, half = mean_ci(np.full(50, 3.25))
    assert (mean, half) == (3.25, 0.0)


def test_mean_ci_width_shrinks():
    rng = np.random.default_rng(4)
    x = rng.normal(size=40_000)
    _, h1 = mean_ci(x[:1000])
    _, h2 = mean_ci(x)
    assert h2 < h1


def test_normal_cdf_basics():
    assert normal_cdf(0.0) == pytest.approx(0.5)
    assert normal_cdf(1.96) == pytest.approx(0.975, abs=1e-3)
    arr = normal_cdf(np.array([-1.0, 0.0, 1.0]), mean=0.0, std=1.0)
    assert np.all(np.diff(arr) > 0)
