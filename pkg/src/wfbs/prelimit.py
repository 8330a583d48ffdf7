"""Quadrature evaluation of the exact finite-T covariance of the
fluctuation field — a Monte-Carlo-free oracle for the particle system.

The covariance of X_T at (s, t) and (s', t') factorizes per axis into

    (1/F^(i)^2) * int_0^{T u} int_0^{T u'} k(w1, w2) dw2 dw1,

where the axis kernel k(w1, w2) integrates the semigroup expression
T_{w1 ^ w2}( f * T_{|w1-w2|} f ) against the intensity |x|^{-gamma} dx.
For alpha = 2 with gaussian test functions every convolution is Gaussian
and k is closed form; all other configurations fall back to nested
quadrature (slow).

Convention at w1 = w2: the inner semigroup operator at time 0 is the
identity, so the kernel value is the weighted integral of f^2 spread by
T_{w1}; for test functions of positive width this is finite, and the
|w1-w2|^{-1/alpha}-type ridge along the diagonal is integrable (alpha > 1).
Adaptive quadrature splits at the diagonal rather than evaluating on it.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureFailure
from .particles import ParticleConfig, TestFunction
from .special import stable_density

__all__ = ["SemigroupQuery", "axis_number_cov", "prelimit_cov_XT", "axis_time_integral"]


@dataclass(frozen=True)
class SemigroupQuery:
    """One evaluation of the single-axis covariance kernel."""

    alpha: float
    gamma: float
    f: TestFunction
    u1: float
    u2: float

    def __post_init__(self):
        if self.u1 < 0 or self.u2 < 0:
            raise DomainError("times must be nonnegative")
        if not (0 < self.alpha <= 2):
            raise DomainError(f"alpha = {self.alpha} must lie in (0, 2]")
        if not self.gamma < 1:
            raise DomainError(f"gamma = {self.gamma} must satisfy gamma < 1")


def _weighted_gaussian_moment(gamma, c, V, mass):
    """int |x|^{-gamma} mass N(x; c, V) dx."""
    if gamma == 0.0:
        return mass
    if c == 0.0:
        return (
            mass
            * V ** (-gamma / 2.0)
            * 2.0 ** (-gamma / 2.0)
            * math.gamma((1.0 - gamma) / 2.0)
            / math.sqrt(math.pi)
        )
    sd = math.sqrt(V)
    X = abs(c) + 12.0 * sd
    dens = lambda x: (
        mass * abs(x) ** (-gamma) * math.exp(-((x - c) ** 2) / (2.0 * V)) / (sd * math.sqrt(2.0 * math.pi))
    )
    val, err = integrate.quad(dens, -X, X, points=[0.0], limit=200)
    if not np.isfinite(val):
        raise QuadratureFailure("weighted gaussian moment quadrature failed")
    return val


def axis_number_cov(q: SemigroupQuery):
    """Single-axis covariance kernel
    int |x|^{-gamma} T_{u1^u2}( f * T_{|u1-u2|} f )(x) dx.

    Closed form for alpha = 2 with a gaussian f; nested quadrature
    otherwise.  For gamma = 0 the outer semigroup conserves mass and the
    value collapses to int int f(y) p_{|u1-u2|}(y-z) f(z) dy dz.
    """
    tau = abs(q.u1 - q.u2)
    m = min(q.u1, q.u2)
    f = q.f
    if q.alpha == 2.0 and f.kind == "gaussian":
        A = f.width**2
        B = f.width**2 + 2.0 * tau
        mass_g = f.mass**2 / math.sqrt(2.0 * math.pi * (A + B))
        V = A * B / (A + B) + 2.0 * m
        return _weighted_gaussian_moment(q.gamma, f.center, V, mass_g)
    # slow general path
    if f.kind == "gaussian":
        ylo, yhi = f.center - 10.0 * f.width, f.center + 10.0 * f.width
    else:
        ylo, yhi = f.lo, f.hi

    def conv_f(y):
        if tau == 0.0:
            return f(y)
        val, _ = integrate.quad(
            lambda z: f(z) * stable_density(q.alpha, tau, y - z), ylo, yhi, limit=50
        )
        return val

    if q.gamma == 0.0:
        wgt = lambda y: 1.0
    else:
        def wgt(y):
            if m == 0.0:
                return abs(y) ** (-q.gamma)
            val, _ = integrate.quad(
                lambda x: abs(x) ** (-q.gamma) * stable_density(q.alpha, m, x - y),
                -50.0 * (1.0 + abs(y)),
                50.0 * (1.0 + abs(y)),
                points=[0.0],
                limit=100,
            )
            return val

    val, err = integrate.quad(lambda y: f(y) * conv_f(y) * wgt(y), ylo, yhi, limit=50)
    if not np.isfinite(val):
        raise QuadratureFailure("axis covariance kernel quadrature failed")
    return val


def axis_time_integral(f: TestFunction, alpha, gamma, T, u, u2):
    """Double time integral of the axis kernel over [0, Tu] x [0, Tu']."""
    if u == 0 or u2 == 0:
        return 0.0
    U1, U2 = T * u, T * u2

    def inner(w1):
        k = lambda w2: axis_number_cov(SemigroupQuery(alpha, gamma, f, w1, w2))
        if 0.0 < w1 < U2:
            val, _ = integrate.quad(k, 0.0, U2, points=[w1], limit=200)
        else:
            val, _ = integrate.quad(k, 0.0, U2, limit=200)
        return val

    val, err = integrate.quad(inner, 0.0, U1, limit=200, epsrel=1e-9)
    if not np.isfinite(val):
        raise QuadratureFailure("time-square quadrature failed")
    return val


def prelimit_cov_XT(cfg: ParticleConfig, pt1, pt2):
    """Exact covariance Cov(X_T(pt1), X_T(pt2)) of the untruncated system
    at finite T: product over axes of the normalized double time integral."""
    s, t = pt1
    s2, t2 = pt2
    out = 1.0
    for axis, (u, u2) in zip((1, 2), ((s, s2), (t, t2))):
        alpha, gamma = cfg.pp.axis(axis)
        if not alpha > 1:
            raise DomainError("the prelimit covariance requires alpha > 1")
        F = cfg.T ** (1.0 - (1.0 + gamma) / (2.0 * alpha))
        out *= axis_time_integral(cfg.axis_fn(axis), alpha, gamma, cfg.T, u, u2) / F**2
    return out
