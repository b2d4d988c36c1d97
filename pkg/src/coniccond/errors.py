"""Exception types shared across the package."""


class ConicCondError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ConicCondError):
    """Input shapes are inconsistent or outside the supported range."""


class RankDeficient(ConicCondError):
    """A full row rank matrix was required."""


class NumericalFailure(ConicCondError):
    """A numerical routine failed to produce a trustworthy result."""


class ZeroVector(ConicCondError):
    """A nonzero vector was required."""


class NotBalanced(ConicCondError):
    """A matrix with orthonormal rows was required."""


class XInComplement(ConicCondError):
    """The direction lies (numerically) in the orthogonal complement of the subspace."""


class NotDualFeasible(ConicCondError):
    """The operation requires a strictly dual feasible instance."""


class NotPrimalFeasible(ConicCondError):
    """The operation requires a strictly primal feasible instance."""


class InconsistentClassification(ConicCondError):
    """Both strict-feasibility angles exceeded the threshold.

    The theorem of alternatives forbids this; it signals a numerical bug,
    not a valid outcome.
    """


class EmptyInput(ConicCondError):
    """At least one input point was required."""


class NonUnitPoint(ConicCondError):
    """All input points must have unit Euclidean norm."""


class ZeroColumn(ConicCondError):
    """All matrix columns must be nonzero."""


class ConeSpecError(ConicCondError):
    """A cone specification string could not be parsed."""
