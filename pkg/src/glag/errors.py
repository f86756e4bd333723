"""Exception types shared across the package."""


class GlagError(Exception):
    """Base class for all package errors."""


class PoleError(GlagError):
    """Evaluation requested at a pole of the function."""


class DomainError(GlagError):
    """Argument outside the domain of validity of an operation."""


class BranchError(GlagError):
    """Point too close to a branch cut; a side flag is required."""


class CutError(BranchError):
    """Point on the cut set of a potential without a side flag."""


class NonConvergence(GlagError):
    """Iteration or subdivision budget exhausted.

    Carries the best estimate so far in ``best`` when applicable.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


class TraceError(GlagError):
    """Trajectory failed to connect to its target turning point."""


class GeometryError(GlagError):
    """Contour assembly could not be certified."""


class SingularityError(GlagError):
    """Evaluation at a point where the parametrix is singular."""


class ConstructionError(GlagError):
    """Contour / potential construction failed for the requested parameters."""
