import math

import numpy as np
import pytest

from wfbs import (
    InvalidRect,
    Rect,
    RayQuery,
    WfbsParams,
    long_increment_limit,
    lrd_limit,
    ray_lrd_limit,
    ray_regime_sign,
    rect_increment_cov,
    rect_increment_var,
    rescaled_increment_constant,
    sheet_cov,
    short_increment_limit,
    wfbm_cov,
)
from conftest import axis_cov_quad, random_valid_params


def test_axis_cov_standard_brownian_case():
    # a = b = 0: C(u, v) = 2 min(u, v)
    assert wfbm_cov(0.0, 0.0, 1.0, 1.0) == pytest.approx(2.0, rel=1e-12)
    assert wfbm_cov(0.0, 0.0, 0.3, 2.0) == pytest.approx(0.6, rel=1e-12)


def test_axis_cov_closed_value():
    # a = 0, b = 1/2, u = v = 1: 2 * int_0^1 (1-r)^{1/2} dr = 4/3
    assert wfbm_cov(0.0, 0.5, 1.0, 1.0) == pytest.approx(4.0 / 3.0, rel=1e-12)
    # a = 0, b = 1: int_0^{u} [(u-r) + (v-r)] dr with u=1, v=2 -> u(u+v) - u^2 = 2
    assert wfbm_cov(0.0, 1.0, 1.0, 2.0) == pytest.approx(2.0, rel=1e-12)


def test_axis_cov_vs_quadrature(rng):
    for _ in range(60):
        a, b = random_valid_params(rng)
        u = rng.uniform(0.05, 3.0)
        v = rng.uniform(0.05, 3.0)
        got = wfbm_cov(a, b, u, v)
        want = axis_cov_quad(a, b, u, v)
        assert got == pytest.approx(want, rel=1e-9, abs=1e-12)


def test_axis_cov_symmetry_and_zero(rng):
    for _ in range(30):
        a, b = random_valid_params(rng)
        u = rng.uniform(0.1, 2.0)
        v = rng.uniform(0.1, 2.0)
        assert wfbm_cov(a, b, u, v) == pytest.approx(wfbm_cov(a, b, v, u), rel=1e-13)
    assert wfbm_cov(0.3, 0.2, 0.0, 1.0) == 0.0


def test_sheet_cov_is_product(rng):
    p = WfbsParams(-0.25, 0.5, 0.0, 0.25)
    for _ in range(20):
        s, t, s2, t2 = rng.uniform(0.1, 2.0, size=4)
        prod = wfbm_cov(p.a1, p.b1, s, s2) * wfbm_cov(p.a2, p.b2, t, t2)
        assert sheet_cov(p, s, t, s2, t2) == pytest.approx(prod, rel=1e-12)


def test_self_similarity(rng):
    # C(hs, kt, hs', kt') = h^{1+a1+b1} k^{1+a2+b2} C(s, t, s', t')
    for _ in range(200):
        a1, b1 = random_valid_params(rng)
        a2, b2 = random_valid_params(rng)
        p = WfbsParams(a1, b1, a2, b2)
        s, t, s2, t2 = rng.uniform(0.1, 2.0, size=4)
        h = rng.uniform(0.2, 4.0)
        k = rng.uniform(0.2, 4.0)
        lhs = sheet_cov(p, h * s, k * t, h * s2, k * t2)
        rhs = h ** (1 + a1 + b1) * k ** (1 + a2 + b2) * sheet_cov(p, s, t, s2, t2)
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_rect_increment_var_nonnegative(rng):
    p = WfbsParams(-0.25, 0.5, 0.0, 0.25)
    for _ in range(30):
        s, t = rng.uniform(0.1, 1.0, size=2)
        ds, dt = rng.uniform(0.05, 1.0, size=2)
        r = Rect(s, t, s + ds, t + dt)
        assert rect_increment_var(p, r) >= -1e-12


def test_rect_increment_cov_expansion():
    # against the 16-term expansion of E[ΔX(r1) ΔX(r2)] in sheet covariances
    p = WfbsParams(0.3, -0.2, -0.1, 0.4)
    r1 = Rect(0.2, 0.3, 0.9, 1.1)
    r2 = Rect(1.0, 1.2, 1.7, 2.0)
    total = 0.0
    corners1 = [(r1.s, -1.0), (r1.s2, 1.0)]
    corners2 = [(r1.t, -1.0), (r1.t2, 1.0)]
    corners3 = [(r2.s, -1.0), (r2.s2, 1.0)]
    corners4 = [(r2.t, -1.0), (r2.t2, 1.0)]
    for u, cu in corners1:
        for v, cv in corners2:
            for x, cx in corners3:
                for y, cy in corners4:
                    total += cu * cv * cx * cy * sheet_cov(p, u, v, x, y)
    assert rect_increment_cov(p, r1, r2) == pytest.approx(total, rel=1e-10)


def test_rect_validation():
    with pytest.raises(InvalidRect):
        Rect(1.0, 0.0, 0.5, 1.0)
    with pytest.raises(InvalidRect):
        Rect(0.0, 1.0, 1.0, 0.5)


def test_sign_trichotomy():
    # disjoint ordered rectangles: sign of increment covariance = sign(b1*b2)
    r1 = Rect(0.0, 0.0, 1.0, 1.0)
    r2 = Rect(1.5, 1.5, 2.5, 2.5)
    for b1 in (-0.5, 0.0, 0.5):
        for b2 in (-0.5, 0.0, 0.5):
            p = WfbsParams(0.0, b1, 0.0, b2)
            c = rect_increment_cov(p, r1, r2)
            want = np.sign(b1 * b2)
            if want == 0.0:
                assert abs(c) < 1e-12
            else:
                assert np.sign(c) == want


def test_short_increment_limit_value():
    # 4 / ((1+b1)(1+b2)) * s^{a1} t^{a2}
    p = WfbsParams(-0.25, 0.5, 0.0, 0.25)
    s, t = 1.3, 0.7
    want = 4.0 / (1.5 * 1.25) * s ** (-0.25) * t**0.0
    assert short_increment_limit(p, s, t) == pytest.approx(want, rel=1e-12)


def test_long_increment_limit_value():
    # 4 B(1+a1, 1+b1) B(1+a2, 1+b2)
    from scipy.special import beta

    p = WfbsParams(-0.25, 0.5, 0.0, 0.25)
    want = 4.0 * beta(0.75, 1.5) * beta(1.0, 1.25)
    assert long_increment_limit(p) == pytest.approx(want, rel=1e-12)


def test_rescaled_increment_constant_value():
    p = WfbsParams(-0.25, 0.5, 0.0, 0.25)
    assert rescaled_increment_constant(p) == pytest.approx(
        2.0 / math.sqrt(1.5 * 1.25), rel=1e-12
    )


def test_ray_regime_sign():
    assert ray_regime_sign(WfbsParams(0.0, 0.2, 0.0, 0.3)) < 0  # b1+b2 < 1
    assert ray_regime_sign(WfbsParams(0.0, 0.5, 0.0, 0.5)) == 0
    assert ray_regime_sign(WfbsParams(0.0, 0.8, 0.0, 0.7)) > 0


def test_lrd_limit_finite_and_symmetric():
    p = WfbsParams(0.0, 0.5, 0.0, 0.25)
    v = lrd_limit(p, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0)
    assert math.isfinite(v)


def test_ray_lrd_limit_finite():
    p = WfbsParams(0.0, 0.3, 0.0, 0.4)
    q = RayQuery(1.0, 0.5, 1.0, 1.0, 1.5)
    assert math.isfinite(ray_lrd_limit(p, q))
