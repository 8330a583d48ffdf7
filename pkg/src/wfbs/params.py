"""Parameter bundles for the sheet and the particle system, with the
mappings between them.

The sheet is parametrized by two pairs (a_i, b_i), one per time axis, with

    a_i > -1,   -1 < b_i <= 1,   |b_i| <= 1 + a_i.

The particle system is parametrized by stability indices alpha_i in (1, 2]
and intensity exponents gamma_i < 1, mapped onto the sheet by

    a_i = -gamma_i / alpha_i,   b_i = 1 - 1/alpha_i.
"""

from dataclasses import dataclass

from .errors import OutOfRange


@dataclass(frozen=True)
class WfbsParams:
    """Sheet parameters (a1, b1) for axis 1 and (a2, b2) for axis 2."""

    a1: float
    b1: float
    a2: float
    b2: float

    def __post_init__(self):
        for i, (a, b) in enumerate(((self.a1, self.b1), (self.a2, self.b2)), start=1):
            if not a > -1:
                raise OutOfRange(f"a = {a} must satisfy a > -1", index=i)
            if not (-1 < b <= 1):
                raise OutOfRange(f"b = {b} must satisfy -1 < b <= 1", index=i)
            if not abs(b) <= 1 + a:
                raise OutOfRange(f"|b| = {abs(b)} exceeds 1 + a = {1 + a}", index=i)

    def axis(self, i):
        """Return (a, b) for axis i in {1, 2}."""
        if i == 1:
            return self.a1, self.b1
        if i == 2:
            return self.a2, self.b2
        raise ValueError(f"axis must be 1 or 2, got {i}")


@dataclass(frozen=True)
class ParticleParams:
    """Stable-motion and Poisson-intensity exponents of the particle system.

    Requires 1 < alpha_i <= 2 and gamma_i < 1.  Negative gamma_i is allowed,
    but when alpha_i < 2 it must satisfy |gamma_i| < alpha_i (finite mean of
    the weighted density integral).
    """

    alpha1: float
    alpha2: float
    gamma1: float
    gamma2: float

    def __post_init__(self):
        for i, (alpha, gamma) in enumerate(
            ((self.alpha1, self.gamma1), (self.alpha2, self.gamma2)), start=1
        ):
            if not (1 < alpha <= 2):
                raise OutOfRange(f"alpha = {alpha} must satisfy 1 < alpha <= 2", index=i)
            if not gamma < 1:
                raise OutOfRange(f"gamma = {gamma} must satisfy gamma < 1", index=i)
            if gamma < 0 and alpha < 2 and not abs(gamma) < alpha:
                raise OutOfRange(
                    f"negative gamma requires |gamma| < alpha, got |{gamma}| >= {alpha}",
                    index=i,
                )

    def axis(self, i):
        if i == 1:
            return self.alpha1, self.gamma1
        if i == 2:
            return self.alpha2, self.gamma2
        raise ValueError(f"axis must be 1 or 2, got {i}")


@dataclass(frozen=True)
class HolderExponents:
    delta1: float
    delta2: float


def validate_wfbs_params(a1, b1, a2, b2):
    """Validate and bundle sheet parameters; raises OutOfRange on violation."""
    return WfbsParams(a1, b1, a2, b2)


def params_from_particle(p: ParticleParams) -> WfbsParams:
    """Sheet parameters realized as the particle-system limit:
    a_i = -gamma_i/alpha_i, b_i = 1 - 1/alpha_i."""
    return WfbsParams(
        a1=-p.gamma1 / p.alpha1,
        b1=1.0 - 1.0 / p.alpha1,
        a2=-p.gamma2 / p.alpha2,
        b2=1.0 - 1.0 / p.alpha2,
    )


def hurst_from_alpha(alpha):
    """Hurst parameter h = 1 - 1/(2 alpha) of the homogeneous-case limit sheet.

    Maps (1, 2] onto (1/2, 3/4]."""
    if not (1 < alpha <= 2):
        raise OutOfRange(f"alpha = {alpha} must satisfy 1 < alpha <= 2")
    return 1.0 - 1.0 / (2.0 * alpha)


def holder_exponents(p: WfbsParams) -> HolderExponents:
    """Per-axis Hoelder scale exponents delta_i of the increment-variance bound.

    delta = 1 + a + b when a < 0 and 1 + a + b > 0, otherwise 1 + b.  On the
    branch boundary 1 + a + b = 0 the 'otherwise' branch applies.
    """

    def delta(a, b):
        if a < 0 and 1 + a + b > 0:
            return 1 + a + b
        return 1 + b

    return HolderExponents(delta(p.a1, p.b1), delta(p.a2, p.b2))
