import math

import numpy as np
import pytest

from wfbs import (
    OutOfRange,
    ParticleConfig,
    ParticleParams,
    TestFunction,
    TooFewReplications,
    run_ensemble,
    sample_initial_points,
    truncation_radius,
)

PP = ParticleParams(2.0, 2.0, 0.0, 0.0)
PHI = TestFunction.gaussian(0.0, 1.0 / 32.0)


def small_cfg(T=4.0, **kw):
    return ParticleConfig(pp=PP, phi=PHI, psi=PHI, T=T, eval_points=((1.0, 1.0),), **kw)


def test_test_function_gaussian():
    f = TestFunction.gaussian(0.0, 0.05)
    assert f.integral == pytest.approx(1.0)
    # unit integral: density value at center is 1/(width*sqrt(2*pi))
    assert f(0.0) == pytest.approx(1.0 / (0.05 * math.sqrt(2 * math.pi)), rel=1e-12)
    assert f(10.0) == pytest.approx(0.0, abs=1e-300)


def test_test_function_indicator():
    f = TestFunction.indicator(-0.5, 1.5)
    assert f.integral == pytest.approx(2.0)
    assert f(0.0) == 1.0
    assert f(2.0) == 0.0


def test_truncation_radius_formula():
    cfg = small_cfg(T=8.0, trunc_eps=1e-3)
    want = 8.0 / 32.0 + math.sqrt(2.0 * 8.0 * 1.0 / 1e-3)
    assert truncation_radius(cfg, 1) == pytest.approx(want, rel=1e-12)
    assert truncation_radius(cfg, 2) == pytest.approx(want, rel=1e-12)


def test_truncation_radius_grows_with_horizon():
    r1 = truncation_radius(small_cfg(T=4.0), 1)
    r2 = truncation_radius(small_cfg(T=64.0), 1)
    assert r2 > r1


def test_sample_initial_points_homogeneous():
    rng = np.random.default_rng(5)
    R = 50.0
    counts = []
    for _ in range(200):
        x = sample_initial_points(0.0, R, rng)
        counts.append(len(x))
        assert np.all(np.abs(x) <= R)
    # homogeneous intensity: Poisson(2R) count
    mean = np.mean(counts)
    se = math.sqrt(2 * R / len(counts))
    assert abs(mean - 2 * R) < 5 * se


def test_sample_initial_points_weighted_mass():
    rng = np.random.default_rng(6)
    gamma, R = 0.5, 50.0
    counts = [len(sample_initial_points(gamma, R, rng)) for _ in range(300)]
    expected = 2.0 * R ** (1.0 - gamma) / (1.0 - gamma)
    se = math.sqrt(expected / len(counts))
    assert abs(np.mean(counts) - expected) < 5 * se


def test_run_ensemble_deterministic_and_seed_sensitive():
    cfg = small_cfg()
    a = run_ensemble(cfg, 4, 123)
    b = run_ensemble(cfg, 4, 123)
    c = run_ensemble(cfg, 4, 124)
    assert np.array_equal(a.xt_values, b.xt_values)
    assert not np.array_equal(a.xt_values, c.xt_values)
    assert a.replications == 4
    assert a.xt_values.shape == (4, 1)


def test_run_ensemble_jobs_invariance():
    cfg = small_cfg()
    a = run_ensemble(cfg, 6, 99, jobs=1)
    b = run_ensemble(cfg, 6, 99, jobs=2)
    assert np.array_equal(a.xt_values, b.xt_values)


def test_run_ensemble_substream_concatenation():
    cfg = small_cfg()
    whole = run_ensemble(cfg, 6, 77)
    head = run_ensemble(cfg, 3, 77)
    tail = run_ensemble(cfg, 3, 77, start_index=3)
    assert np.array_equal(whole.xt_values, np.vstack([head.xt_values, tail.xt_values]))


def test_run_ensemble_centered():
    cfg = small_cfg(T=8.0)
    e = run_ensemble(cfg, 256, 2024)
    x = e.xt_values[:, 0]
    se = x.std(ddof=1) / math.sqrt(len(x))
    assert abs(x.mean()) < 5 * se


def test_run_ensemble_rejects_single_replication():
    with pytest.raises((OutOfRange, TooFewReplications)):
        run_ensemble(small_cfg(), 1, 0)


def test_config_validation():
    with pytest.raises(OutOfRange):
        small_cfg(time_steps=16)  # too coarse
    with pytest.raises(OutOfRange):
        small_cfg(trunc_eps=0.0)
