"""End-to-end statistical acceptance suite.

One test per advertised guarantee of the package, each at its stated
tolerance.  The three heavy Monte Carlo ensembles (4000 replications each)
are generated once by ``tests/data/generate.py`` and consumed here from
``tests/data/*.npz``; every other check runs from scratch.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from wfbs import (
    GridSpec,
    OccupationEnsemble,
    ParticleConfig,
    ParticleParams,
    Rect,
    TestFunction,
    WfbsParams,
    all_pass,
    amplitude_D,
    check_holder,
    check_lrd,
    empirical_cov,
    params_from_particle,
    prelimit_cov_XT,
    rect_increment_cov,
    sample_field_array,
    sheet_cov,
    stable_density,
    wfbm_cov,
)
from wfbs.verify import theorem31_reports
from conftest import axis_cov_quad, random_valid_params

DATA = Path(__file__).parent / "data"


def load_ensemble(name):
    path = DATA / f"{name}.npz"
    if not path.exists():
        pytest.fail(
            f"missing Monte Carlo artifact {path}; run tests/data/generate.py "
            f"(several hours on one core) before the acceptance suite"
        )
    z = np.load(path)
    f = TestFunction.gaussian(0.0, float(z["width"]))
    cfg = ParticleConfig(
        pp=ParticleParams(*z["alpha"].tolist(), *z["gamma"].tolist()),
        phi=f,
        psi=f,
        T=float(z["T"]),
        eval_points=tuple(map(tuple, z["eval_points"].tolist())),
        time_steps=int(z["time_steps"]),
        trunc_eps=float(z["trunc_eps"]),
    )
    return OccupationEnsemble(
        config=cfg,
        replications=int(z["replications"]),
        xt_values=z["xt"],
        seeds=tuple(z["seeds"].tolist()),
    )


@pytest.fixture(scope="module")
def ladder_ensembles():
    return {T: load_ensemble(f"ladder_T{T}") for T in (8, 32, 128)}


# -- analytic covariance ------------------------------------------------------


def test_axis_covariance_matches_quadrature_on_random_parameters(rng):
    t0 = time.time()
    worst = 0.0
    for _ in range(1000):
        a, b = random_valid_params(rng)
        u = rng.uniform(0.05, 3.0)
        v = rng.uniform(0.05, 3.0)
        want = axis_cov_quad(a, b, u, v)
        got = wfbm_cov(a, b, u, v)
        worst = max(worst, abs(got - want) / abs(want))
    assert worst <= 1e-9, f"max relative deviation {worst:.3e}"
    assert time.time() - t0 < 30.0


def test_self_similarity_of_sheet_covariance(rng):
    worst = 0.0
    for _ in range(10_000):
        a1, b1 = random_valid_params(rng)
        a2, b2 = random_valid_params(rng)
        p = WfbsParams(a1, b1, a2, b2)
        s, t, s2, t2 = rng.uniform(0.1, 2.0, size=4)
        h = rng.uniform(0.2, 4.0)
        k = rng.uniform(0.2, 4.0)
        lhs = sheet_cov(p, h * s, k * t, h * s2, k * t2)
        rhs = h ** (1 + a1 + b1) * k ** (1 + a2 + b2) * sheet_cov(p, s, t, s2, t2)
        if rhs != 0.0:
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    assert worst <= 1e-10, f"max relative deviation {worst:.3e}"


def test_increment_covariance_sign_trichotomy():
    t0 = time.time()
    r1 = Rect(0.0, 0.0, 1.0, 1.0)
    r2 = Rect(1.5, 1.5, 2.5, 2.5)
    for b1 in (-0.5, 0.0, 0.5):
        for b2 in (-0.5, 0.0, 0.5):
            c = rect_increment_cov(WfbsParams(0.0, b1, 0.0, b2), r1, r2)
            want = np.sign(b1 * b2)
            if want == 0.0:
                assert abs(c) < 1e-12, (b1, b2, c)
            else:
                assert np.sign(c) == want, (b1, b2, c)
    assert time.time() - t0 < 5.0


# -- stable laws --------------------------------------------------------------


def test_stable_density_closed_form_constants_and_normalization():
    t0 = time.time()
    for alpha in (1.0, 1.2, 1.5, 1.8, 2.0):
        target = math.gamma(1.0 / alpha) / (alpha * math.pi)
        assert abs(stable_density(alpha, 1.0, 0.0) - target) <= 1e-8
    from scipy import integrate

    for alpha in (1.2, 1.8):
        # symmetric split: the doubly-infinite QUADPACK transform silently
        # underestimates the bulk for alpha near 2
        core, _ = integrate.quad(lambda x: stable_density(alpha, 1.0, x), 0.0, 50.0, limit=400)
        tail, _ = integrate.quad(lambda x: stable_density(alpha, 1.0, x), 50.0, np.inf, limit=400)
        assert abs(2.0 * (core + tail) - 1.0) <= 1e-6
    assert time.time() - t0 < 10.0


# -- exact field sampler ------------------------------------------------------


def test_field_sampler_covariance_exactness():
    t0 = time.time()
    p = WfbsParams(-0.25, 0.5, 0.0, 0.25)
    g = GridSpec((0.5, 1.0, 1.5), (0.5, 1.0, 1.5))
    n = 200_000
    arr = sample_field_array(p, g, n, seed=20260826).reshape(n, -1)
    emp = np.cov(arr, rowvar=False)
    pts = [(s, t) for s in g.s_points for t in g.t_points]
    for i, (s, t) in enumerate(pts):
        for j, (s2, t2) in enumerate(pts):
            want = sheet_cov(p, s, t, s2, t2)
            vi = sheet_cov(p, s, t, s, t)
            vj = sheet_cov(p, s2, t2, s2, t2)
            se = math.sqrt((vi * vj + want * want) / n)
            assert abs(emp[i, j] - want) <= 4.0 * se, (i, j, emp[i, j], want, se)
    assert time.time() - t0 < 120.0


# -- particle-system fluctuations --------------------------------------------


def test_particle_variance_converges_to_analytic_limit(ladder_ensembles):
    cfg = ladder_ensembles[128].config
    reports = theorem31_reports(cfg, ladder_ensembles, prelimit_at=())
    by_name = {r.name: r for r in reports}
    # absolute error shrinks along the horizon ladder (common random numbers)
    assert by_name["variance_error_monotone"].verdict, by_name[
        "variance_error_monotone"
    ].metadata
    # the largest-horizon estimate's 95% CI contains the analytic target
    final = by_name["cov_T128_p00"]
    assert final.verdict, (final.estimate, final.target, final.tolerance)
    assert final.metadata["ci_multiplier"] == pytest.approx(1.96)


def test_finite_horizon_quadrature_agreement(ladder_ensembles):
    # Monte Carlo at the smallest horizon vs the deterministic quadrature
    ens = ladder_ensembles[8]
    est, se = empirical_cov(ens, 0, 0)
    want = prelimit_cov_XT(ens.config, (1.0, 1.0), (1.0, 1.0))
    assert abs(est - want) <= 3.0 * se, (est, want, se)
    # the quadrature itself is within 1% of the analytic limit at T = 512
    t0 = time.time()
    cfg512 = ParticleConfig(
        pp=ens.config.pp,
        phi=ens.config.phi,
        psi=ens.config.psi,
        T=512.0,
        eval_points=((1.0, 1.0),),
    )
    val = prelimit_cov_XT(cfg512, (1.0, 1.0), (1.0, 1.0))
    d = amplitude_D(ens.config.pp, 1.0, 1.0)
    limit = d * d * sheet_cov(params_from_particle(ens.config.pp), 1.0, 1.0, 1.0, 1.0)
    assert abs(val - limit) / limit <= 0.01
    assert time.time() - t0 < 300.0


def test_weighted_intensity_covariances():
    ens = load_ensemble("weighted_T128")
    cfg = ens.config
    p = params_from_particle(cfg.pp)
    assert p.a1 == pytest.approx(-0.25) and p.a2 == pytest.approx(0.0)
    assert p.b1 == pytest.approx(0.5) and p.b2 == pytest.approx(0.5)
    d = amplitude_D(cfg.pp, 1.0, 1.0)
    pts = cfg.eval_points
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            est, se = empirical_cov(ens, i, j)
            want = d * d * sheet_cov(p, pts[i][0], pts[i][1], pts[j][0], pts[j][1])
            assert abs(est - want) <= 1.96 * se, (pts[i], pts[j], est, want, se)


# -- dependence structure ------------------------------------------------------


def test_long_range_dependence_ladders():
    t0 = time.time()
    for p in (
        WfbsParams(0.0, 0.3, 0.0, 0.4),  # decaying ray covariance
        WfbsParams(0.0, 0.5, 0.0, 0.5),  # boundary: non-trivial ray limit
        WfbsParams(0.0, 0.8, 0.0, 0.7),  # growing ray covariance
    ):
        reports = check_lrd(p, (1e2, 1e3, 1e4))
        assert all_pass(reports), [
            (r.name, r.estimate, r.target) for r in reports if not r.verdict
        ]
    assert time.time() - t0 < 60.0


def test_holder_slopes_match_regularity_exponents():
    t0 = time.time()
    for p in (
        WfbsParams(0.0, 0.5, 0.0, 0.5),
        WfbsParams(-0.25, 0.5, 0.0, 0.25),
        WfbsParams(0.5, 0.25, -0.25, 0.3),
    ):
        r = check_holder(p, grid_power=10, seed=7, replications=96)
        assert r.verdict, (p, r.estimate, r.metadata)
        assert r.tolerance == pytest.approx(0.1)
    assert time.time() - t0 < 120.0


# -- negative controls ---------------------------------------------------------


def test_negative_controls_flip_verdicts(ladder_ensembles):
    cfg = ladder_ensembles[128].config
    # 10% perturbation of the analytic target variance
    scaled = theorem31_reports(cfg, ladder_ensembles, target_scale=1.1, prelimit_at=())
    assert not {r.name: r for r in scaled}["cov_T128_p00"].verdict
    # 10% perturbation of the normalization exponent (via the intensity index)
    shifted = theorem31_reports(
        cfg, ladder_ensembles, gamma_shift=(-0.6, 0.0), prelimit_at=()
    )
    assert not {r.name: r for r in shifted}["cov_T128_p00"].verdict
    # same perturbation of the dependence-ladder target
    p = WfbsParams(0.0, 0.3, 0.0, 0.4)
    assert not all_pass(check_lrd(p, (1e2, 1e3, 1e4), target_scale=1.1))
