"""Exception types shared across the package."""


class WfbsError(Exception):
    """Base class for all package errors."""


class OutOfRange(WfbsError):
    """A parameter violates its admissible range.

    Attributes
    ----------
    index : which axis (1 or 2) or parameter the violation refers to, if known.
    constraint : human-readable statement of the violated inequality.
    """

    def __init__(self, constraint, index=None):
        self.index = index
        self.constraint = constraint
        prefix = f"axis {index}: " if index is not None else ""
        super().__init__(prefix + constraint)


class DomainError(WfbsError):
    """An argument lies outside the mathematical domain of an operation."""


class QuadratureFailure(WfbsError):
    """A numerical integration did not reach its target tolerance."""


class NotPSD(WfbsError):
    """A matrix failed Cholesky factorization even at maximum jitter."""


class InvalidRect(WfbsError):
    """Rectangle corners are not strictly ordered."""


class TooFewReplications(WfbsError):
    """Not enough Monte Carlo replications for the requested statistic."""
