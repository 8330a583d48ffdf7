"""A tour of the analytic covariance structure.

The two-parameter field studied here has a product covariance: one
weighted-fractional-kernel factor per time axis, each of the form

    C(u, v) = int_0^{u ^ v} r^a [ (u - r)^b + (v - r)^b ] dr,

evaluated in closed form through the regularized incomplete Beta function.
This script walks through the identities that pin the kernel down:
scaling, the increment sign trichotomy, and the small/large-separation
limit constants.
"""

import numpy as np

from wfbs import (
    Rect,
    WfbsParams,
    long_increment_limit,
    rect_increment_cov,
    rect_increment_var,
    rescaled_increment_constant,
    sheet_cov,
    short_increment_limit,
    wfbm_cov,
)

p = WfbsParams(a1=-0.25, b1=0.5, a2=0.0, b2=0.25)
print("parameters:", p)

# -- the kernel itself --------------------------------------------------------
print("\naxis kernel C(u, v) on the first axis:")
for u, v in ((1.0, 1.0), (1.0, 2.0), (0.5, 3.0)):
    print(f"  C({u}, {v}) = {wfbm_cov(p.a1, p.b1, u, v):.6f}")
print("standard Brownian special case a=b=0: C(1,1) =", wfbm_cov(0, 0, 1, 1), "(= 2t)")

# -- scaling ------------------------------------------------------------------
print("\nself-similarity: C(hs, kt; hs', kt') = h^(1+a1+b1) k^(1+a2+b2) C(s, t; s', t')")
h, k = 2.0, 3.0
lhs = sheet_cov(p, h * 1.0, k * 1.0, h * 0.7, k * 1.4)
rhs = h ** (1 + p.a1 + p.b1) * k ** (1 + p.a2 + p.b2) * sheet_cov(p, 1.0, 1.0, 0.7, 1.4)
print(f"  lhs = {lhs:.10f}, rhs = {rhs:.10f}, rel diff = {abs(lhs-rhs)/rhs:.2e}")

# -- increments ---------------------------------------------------------------
print("\nrectangle increments: variance is nonnegative, and for disjoint")
print("ordered rectangles the covariance sign equals sign(b1 * b2):")
r1, r2 = Rect(0, 0, 1, 1), Rect(1.5, 1.5, 2.5, 2.5)
for b1 in (-0.5, 0.0, 0.5):
    for b2 in (-0.5, 0.0, 0.5):
        q = WfbsParams(0.0, b1, 0.0, b2)
        c = rect_increment_cov(q, r1, r2)
        print(f"  b=({b1:+.1f},{b2:+.1f}): cov = {c:+.3e}  sign(b1*b2) = {np.sign(b1*b2):+.0f}")
print("  var of the unit-rectangle increment:", rect_increment_var(p, r1))

# -- limit constants ----------------------------------------------------------
print("\nsmall-separation limit of Var[increment]/(eps1^(1+b1) eps2^(1+b2)) at (s,t):")
print("  analytic:", short_increment_limit(p, 1.0, 1.0))
eps = 1e-5
v = rect_increment_var(p, Rect(1.0, 1.0, 1.0 + eps, 1.0 + eps))
print("  numeric :", v / eps ** ((1 + p.b1) + (1 + p.b2)))

print("\nmarginal variance constant: Var X(S,T) / (S^(1+a1+b1) T^(1+a2+b2)):")
print("  analytic:", long_increment_limit(p))
S, T = 37.0, 512.0
v = sheet_cov(p, S, T, S, T) / (S ** (1 + p.a1 + p.b1) * T ** (1 + p.a2 + p.b2))
print("  numeric :", v)

print("\nrescaled-increment constant 2/sqrt((1+b1)(1+b2)):", rescaled_increment_constant(p))
