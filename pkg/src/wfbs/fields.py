"""Exact Gaussian simulation of the sheet on rectangular grids.

The sheet covariance factorizes across axes, so the joint covariance of
the grid values is the Kronecker product of two per-axis covariance
matrices.  A sample therefore costs two small Cholesky factorizations
plus one two-sided matrix product per replicate:

    W = L1 @ Z @ L2.T,   Z i.i.d. standard normal,

where L_i L_i^T is the covariance matrix of axis i on its grid.  This is
exact in law: Cov(vec W) = (L2 L2^T) (x) (L1 L1^T).
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotPSD, OutOfRange
from .params import WfbsParams
from .covariance import wfbm_cov

__all__ = [
    "GridSpec",
    "FieldSample",
    "build_axis_cov",
    "cholesky_psd",
    "cholesky_psd_info",
    "sample_field",
    "sample_field_array",
]

#: graduated diagonal jitter (as a fraction of mean diagonal) tried in order
JITTER_LADDER = (0.0, 1e-12, 1e-10, 1e-8)


@dataclass(frozen=True)
class GridSpec:
    """Strictly increasing, nonnegative evaluation grids for the two axes."""

    s_points: tuple
    t_points: tuple

    def __post_init__(self):
        for name, g in (("s_points", self.s_points), ("t_points", self.t_points)):
            arr = np.asarray(g, dtype=float)
            if arr.ndim != 1 or arr.size == 0:
                raise OutOfRange(f"{name} must be a nonempty 1-d sequence")
            if np.any(arr < 0):
                raise OutOfRange(f"{name} must be nonnegative")
            if np.any(np.diff(arr) <= 0):
                raise OutOfRange(f"{name} must be strictly increasing")
            object.__setattr__(self, name, tuple(float(x) for x in arr))

    @classmethod
    def regular(cls, s_max, t_max, n1, n2):
        """Regular n1 x n2 grid on [0, s_max] x [0, t_max] including zero."""
        return cls(tuple(np.linspace(0.0, s_max, n1)), tuple(np.linspace(0.0, t_max, n2)))


@dataclass(frozen=True)
class FieldSample:
    """One exact draw of the sheet on a grid.

    values[i, j] is W(s_points[i], t_points[j]); exactly zero on any row or
    column where the coordinate is zero.
    """

    grid: GridSpec
    values: np.ndarray
    seed: int


def build_axis_cov(a, b, pts):
    """Per-axis covariance matrix M[i, j] = C(pts[i], pts[j]) on a 1-d grid."""
    g = np.asarray(pts, dtype=float)
    return wfbm_cov(a, b, g[:, None], g[None, :])


def cholesky_psd_info(mat):
    """Cholesky factor of a positive-semidefinite matrix.

    Exactly-zero rows/columns (zero diagonal) are removed before
    factorization and re-inserted as zero rows of L.  If plain Cholesky
    fails, a graduated diagonal jitter jit * mean-diagonal * I is added,
    escalating through JITTER_LADDER.  Returns (L, jitter_used) with
    mat ~= L @ L.T; raises NotPSD if every jitter level fails.
    """
    mat = np.asarray(mat, dtype=float)
    n = mat.shape[0]
    zero = np.flatnonzero(np.diag(mat) == 0.0)
    keep = np.setdiff1d(np.arange(n), zero)
    sub = mat[np.ix_(keep, keep)]
    if len(keep) == 0:
        return np.zeros((n, n)), 0.0
    scale = np.trace(sub) / len(keep)
    for jit in JITTER_LADDER:
        try:
            ls = np.linalg.cholesky(sub + jit * scale * np.eye(len(keep)))
        except np.linalg.LinAlgError:
            continue
        L = np.zeros((n, n))
        L[np.ix_(keep, keep)] = ls
        return L, jit
    raise NotPSD(
        f"covariance matrix of size {n} is not positive semidefinite "
        f"(Cholesky failed up to jitter {JITTER_LADDER[-1]})"
    )


def cholesky_psd(mat):
    """Cholesky factor with jitter escalation; see cholesky_psd_info."""
    return cholesky_psd_info(mat)[0]


def _axis_factors(p: WfbsParams, g: GridSpec):
    l1 = cholesky_psd(build_axis_cov(p.a1, p.b1, g.s_points))
    l2 = cholesky_psd(build_axis_cov(p.a2, p.b2, g.t_points))
    return l1, l2


def _per_sample_seeds(seed, n):
    return np.random.SeedSequence(seed).generate_state(n, np.uint64)


def sample_field(p: WfbsParams, g: GridSpec, n, seed):
    """n exact draws of the sheet on the grid, as a list of FieldSample.

    Per-sample seeds are derived deterministically from `seed`, so samples
    may be generated in any order (or in parallel) with identical results.
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    l1, l2 = _axis_factors(p, g)
    seeds = _per_sample_seeds(seed, n)
    out = []
    for k in range(n):
        z = np.random.default_rng(int(seeds[k])).standard_normal((l1.shape[0], l2.shape[0]))
        out.append(FieldSample(grid=g, values=l1 @ z @ l2.T, seed=int(seeds[k])))
    return out


def sample_field_array(p: WfbsParams, g: GridSpec, n, seed):
    """n exact draws stacked into an array of shape (n, n1, n2).

    Identical in law and in value to sample_field (same per-sample seed
    schedule), but batched for bulk statistics.
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    l1, l2 = _axis_factors(p, g)
    n1, n2 = l1.shape[0], l2.shape[0]
    seeds = _per_sample_seeds(seed, n)
    z = np.empty((n, n1, n2))
    for k in range(n):
        z[k] = np.random.default_rng(int(seeds[k])).standard_normal((n1, n2))
    return np.einsum("ip,kpq,jq->kij", l1, z, l2, optimize=True)
