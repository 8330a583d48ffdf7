"""Analytic covariance structure of the weighted fractional Brownian sheet.

Per-axis covariance of the one-parameter weighted process with weights
(a, b):

    C(u, v) = int_0^{u ^ v} r^a [ (u - r)^b + (v - r)^b ] dr,

with closed form in terms of the regularized incomplete Beta function.
The sheet covariance is the product of the two per-axis covariances, and
rectangle-increment covariances follow by inclusion-exclusion per axis.
Asymptotic limits of increment covariances (short scales, long scales,
long-range-dependence regimes over rectangles and along rays) are exposed
as closed-form functions.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidRect
from .params import ParticleParams, WfbsParams
from .special import beta_fn, reg_inc_beta, stable_density_at_zero, weighted_density_integral

__all__ = [
    "Rect",
    "RayQuery",
    "wfbm_cov",
    "sheet_cov",
    "axis_increment_factor",
    "rect_increment_cov",
    "rect_increment_var",
    "short_increment_limit",
    "long_increment_limit",
    "lrd_limit",
    "ray_lrd_limit",
    "ray_regime_sign",
    "rescaled_increment_constant",
    "amplitude_D",
]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle ((s, t), (s2, t2)] with 0 <= s < s2, 0 <= t < t2."""

    s: float
    t: float
    s2: float
    t2: float

    def __post_init__(self):
        if not (0 <= self.s < self.s2 and 0 <= self.t < self.t2):
            raise InvalidRect(
                f"rectangle corners must satisfy 0 <= s < s2 and 0 <= t < t2, got {self}"
            )

    def translated(self, ds, dt):
        return Rect(self.s + ds, self.t + dt, self.s2 + ds, self.t2 + dt)

    def scaled(self, factor):
        return Rect(self.s * factor, self.t * factor, self.s2 * factor, self.t2 * factor)


@dataclass(frozen=True)
class RayQuery:
    """Increments of the ray process s |-> W(s, theta s): segments (u, v)
    and (s, t) of the ray parameter, compared at dilation tau."""

    theta: float
    u: float
    v: float
    s: float
    t: float
    tau: float = 1.0

    def __post_init__(self):
        if not self.theta > 0:
            raise DomainError(f"theta = {self.theta} must be positive")
        if not self.tau > 0:
            raise DomainError(f"tau = {self.tau} must be positive")
        if not (0 <= self.u < self.v and 0 <= self.s < self.t):
            raise DomainError(f"ray segments must satisfy u < v and s < t, got {self}")


def _check_axis_params(a, b):
    if not a > -1:
        raise DomainError(f"a = {a} must satisfy a > -1")
    if not (-1 < b <= 1):
        raise DomainError(f"b = {b} must satisfy -1 < b <= 1")
    if not abs(b) <= 1 + a:
        raise DomainError(f"|b| = {abs(b)} exceeds 1 + a = {1 + a}")


def wfbm_cov(a, b, u, v):
    """Per-axis covariance C(u, v) of the weighted fractional process.

    Closed form: with m = min(u, v) and B = Beta(a+1, b+1),

        C(u, v) = B [ u^{1+a+b} I_{m/u}(a+1, b+1) + v^{1+a+b} I_{m/v}(a+1, b+1) ].

    Vectorized over broadcastable u, v >= 0; C(u, 0) = 0.
    """
    _check_axis_params(a, b)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any(u < 0) or np.any(v < 0):
        raise DomainError("time points must be nonnegative")
    u, v = np.broadcast_arrays(u, v)
    m = np.minimum(u, v)
    bf = beta_fn(a + 1.0, b + 1.0)
    out = np.zeros(m.shape)
    pos = m > 0
    if np.any(pos):
        up, vp, mp = u[pos], v[pos], m[pos]
        e = 1.0 + a + b
        out[pos] = bf * (
            up**e * reg_inc_beta(mp / up, a + 1.0, b + 1.0)
            + vp**e * reg_inc_beta(mp / vp, a + 1.0, b + 1.0)
        )
    if out.ndim == 0:
        return float(out)
    return out


def sheet_cov(p: WfbsParams, s, t, s2, t2):
    """Covariance of the sheet: Cov(W(s, t), W(s2, t2)) as a product of the
    per-axis covariances; zero whenever any coordinate is zero."""
    return wfbm_cov(p.a1, p.b1, s, s2) * wfbm_cov(p.a2, p.b2, t, t2)


def axis_increment_factor(a, b, s, s2):
    """A(s, s') = int_s^{s'} u^a (s' - u)^b du for 0 <= s <= s'.

    Closed form: s'^{1+a+b} B(1+a, 1+b) [1 - I_{s/s'}(1+a, 1+b)].
    Half the per-axis increment variance over (s, s')."""
    if not 0 <= s <= s2:
        raise DomainError(f"need 0 <= s <= s', got ({s}, {s2})")
    if s2 == 0 or s == s2:
        return 0.0
    bf = beta_fn(1.0 + a, 1.0 + b)
    return s2 ** (1.0 + a + b) * bf * (1.0 - reg_inc_beta(s / s2, 1.0 + a, 1.0 + b))


def _axis_rect_cov(a, b, x1, x2, y1, y2):
    """Per-axis inclusion-exclusion factor
    C(x2, y2) - C(x2, y1) - C(x1, y2) + C(x1, y1)."""
    return (
        wfbm_cov(a, b, x2, y2)
        - wfbm_cov(a, b, x2, y1)
        - wfbm_cov(a, b, x1, y2)
        + wfbm_cov(a, b, x1, y1)
    )


def rect_increment_cov(p: WfbsParams, r1: Rect, r2: Rect):
    """Covariance of the two rectangle increments of the sheet.

    The rectangle increment over ((s, t), (s2, t2)] is
    W(s2,t2) - W(s2,t) - W(s,t2) + W(s,t); its covariance factorizes as the
    product of per-axis inclusion-exclusion sums.  For rectangles that are
    coordinatewise ordered and disjoint, the sign equals sign(b1 * b2).
    """
    f1 = _axis_rect_cov(p.a1, p.b1, r1.s, r1.s2, r2.s, r2.s2)
    f2 = _axis_rect_cov(p.a2, p.b2, r1.t, r1.t2, r2.t, r2.t2)
    return f1 * f2


def rect_increment_var(p: WfbsParams, r: Rect):
    """Variance of a single rectangle increment:
    4 A(s, s2; a1, b1) A(t, t2; a2, b2); strictly positive."""
    return (
        4.0
        * axis_increment_factor(p.a1, p.b1, r.s, r.s2)
        * axis_increment_factor(p.a2, p.b2, r.t, r.t2)
    )


def short_increment_limit(p: WfbsParams, s, t):
    """Limit of Var of the increment over (s, s+h1) x (t, t+h2), divided by
    h1^{1+b1} h2^{1+b2}, as h1, h2 -> 0, at an interior point (s, t):

        4 / ((1+b1)(1+b2)) * s^{a1} t^{a2}.
    """
    if (s == 0 and p.a1 < 0) or (t == 0 and p.a2 < 0):
        raise DomainError("short-scale limit diverges on the axes for negative a")
    if s < 0 or t < 0:
        raise DomainError("times must be nonnegative")
    return 4.0 / ((1.0 + p.b1) * (1.0 + p.b2)) * s**p.a1 * t**p.a2


def long_increment_limit(p: WfbsParams):
    """Limit of Var of the increment over (s, s+h1) x (t, t+h2), divided by
    (s+h1)^{1+a1+b1} (t+h2)^{1+a2+b2}, as h1, h2 -> infinity:

        4 B(1+a1, 1+b1) B(1+a2, 1+b2).
    """
    return 4.0 * beta_fn(1.0 + p.a1, 1.0 + p.b1) * beta_fn(1.0 + p.a2, 1.0 + p.b2)


def lrd_limit(p: WfbsParams, s, t, s2, t2, pp, u, pp2, u2):
    """Long-range dependence limit over receding rectangles.

    With a fixed rectangle ((s, t), (s2, t2)] and a second rectangle
    ((pp, u), (pp2, u2)] receding under translation by tau in both
    coordinates, the covariance of the two rectangle increments times
    tau^{(1-b1)+(1-b2)} converges to

        b1 b2 / ((1+a1)(1+a2)) * (pp2-pp)(s2^{1+a1} - s^{1+a1})
                               * (u2-u)(t2^{1+a2} - t^{1+a2}).
    """
    if not (0 <= s < s2 and 0 <= t < t2 and 0 <= pp < pp2 and 0 <= u < u2):
        raise InvalidRect("corner orderings must hold in both rectangles")
    c1 = (
        p.b1
        / (1.0 + p.a1)
        * (pp2 - pp)
        * (s2 ** (1.0 + p.a1) - s ** (1.0 + p.a1))
    )
    c2 = (
        p.b2
        / (1.0 + p.a2)
        * (u2 - u)
        * (t2 ** (1.0 + p.a2) - t ** (1.0 + p.a2))
    )
    return c1 * c2


def ray_regime_sign(p: WfbsParams):
    """Sign of b1 + b2 - 1, separating the three dependence regimes of the
    ray process (negative: covariance decay; zero: non-trivial bounded
    limit; positive: growth of the raw covariance)."""
    return float(np.sign(p.b1 + p.b2 - 1.0))


def ray_lrd_limit(p: WfbsParams, q: RayQuery):
    """Dependence limit along the ray t = theta s.

    For 0 <= b1, b2 < 1 (not both zero), the covariance of the increments
    of Z(s) = W(s, theta s) over (u, v) and (s + tau, t + tau) times
    tau^{1-(b1+b2)} converges to

        theta^{1+a2+b2} (b1 + b2) / ((1+a1)(1+a2))
            * (v^{2+a1+a2} - u^{2+a1+a2}) * (t - s).
    """
    b1, b2 = p.b1, p.b2
    if not (0 <= b1 < 1 and 0 <= b2 < 1):
        raise DomainError("ray limit requires 0 <= b1 < 1 and 0 <= b2 < 1")
    if b1 == 0 and b2 == 0:
        raise DomainError("ray limit requires b1 + b2 > 0")
    a1, a2 = p.a1, p.a2
    return (
        q.theta ** (1.0 + a2 + b2)
        * (b1 + b2)
        / ((1.0 + a1) * (1.0 + a2))
        * (q.v ** (2.0 + a1 + a2) - q.u ** (2.0 + a1 + a2))
        * (q.t - q.s)
    )


def rescaled_increment_constant(p: WfbsParams):
    """Constant 2 / sqrt((1+b1)(1+b2)) multiplying the fractional-sheet
    variance form in the small-scale rescaled increment limit at an
    interior point."""
    return 2.0 / math.sqrt((1.0 + p.b1) * (1.0 + p.b2))


def amplitude_D(pp: ParticleParams, int_phi=1.0, int_psi=1.0):
    """Amplitude multiplying the limit sheet of the normalized occupation
    fluctuations:

        D = (int phi)(int psi) * prod_i [ 1/(1 - 1/alpha_i) * p_1(0; alpha_i)
               * int p_1(x; alpha_i) |x|^{-gamma_i} dx ]^{1/2}.
    """
    if int_phi * int_psi == 0:
        raise DomainError("test function integrals must be nonzero")
    prod = 1.0
    for alpha, gamma in (pp.axis(1), pp.axis(2)):
        prod *= (
            1.0
            / (1.0 - 1.0 / alpha)
            * stable_density_at_zero(alpha)
            * weighted_density_integral(alpha, gamma)
        )
    return int_phi * int_psi * math.sqrt(prod)
