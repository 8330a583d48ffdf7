"""Shared fixtures and independent numerical oracles.

The oracles here deliberately avoid the library's own evaluation paths:
the per-axis covariance is integrated directly with QUADPACK's algebraic
endpoint-weight rule, and the finite-horizon fluctuation variance in the
homogeneous Brownian case is reproduced from an elementary closed form.
"""

import math

import numpy as np
import pytest
from scipy import integrate


def axis_cov_quad(a, b, u, v):
    """Direct adaptive quadrature of int_0^{min(u,v)} r^a [(u-r)^b + (v-r)^b] dr.

    Each term is integrated with the (x-lo)^alpha (hi-x)^beta weighted rule so
    the endpoint singularities (r^a at 0, (w-r)^b at w when w = min(u, v) and
    b < 0) are handled analytically by the quadrature itself.
    """
    m = min(u, v)
    if m <= 0.0:
        return 0.0

    def term(w):
        if w == m:
            val, _ = integrate.quad(
                lambda r: 1.0, 0.0, m, weight="alg", wvar=(a, b), epsabs=0.0, epsrel=1e-12
            )
        else:
            val, _ = integrate.quad(
                lambda r: (w - r) ** b,
                0.0,
                m,
                weight="alg",
                wvar=(a, 0.0),
                epsabs=0.0,
                epsrel=1e-12,
            )
        return val

    return term(u) + term(v)


def sheet_cov_quad(a1, b1, a2, b2, s, t, s2, t2):
    """Product-form sheet covariance evaluated entirely by quadrature."""
    return axis_cov_quad(a1, b1, s, s2) * axis_cov_quad(a2, b2, t, t2)


def axis_fluctuation_var_closed(sigma, T):
    """Closed form for the per-axis fluctuation variance at horizon T.

    Homogeneous Brownian case (variance-2t convention), unit-integral
    Gaussian test function of width sigma, evaluation time 1.  Tends to
    4 / (3 sqrt(pi)) as T grows.
    """
    g = math.sqrt(sigma * sigma + T)
    s = sigma
    j = 2.0 * (2.0 * T * (g - s) - (2.0 / 3.0) * (g**3 - s**3) + 2.0 * s * s * (g - s))
    return j / (math.sqrt(4.0 * math.pi) * T**1.5)


def prelimit_var_closed(sigma1, sigma2, T):
    """Closed form for Var X_T(1, 1) in the homogeneous Brownian case."""
    return axis_fluctuation_var_closed(sigma1, T) * axis_fluctuation_var_closed(sigma2, T)


def random_valid_params(rng):
    """One random (a, b) pair satisfying a > -1, -1 < b <= 1, |b| <= 1 + a."""
    a = rng.uniform(-0.9, 2.0)
    lo = max(-0.95, -(1.0 + a) + 1e-6)
    hi = min(1.0, 1.0 + a)
    b = rng.uniform(lo, hi)
    return a, b


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
