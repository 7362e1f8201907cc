"""Exception taxonomy shared by all logmaj modules."""


class LogmajError(Exception):
    """Base class for all package errors."""


# -- step functions / interval sets -----------------------------------------

class NotPartition(LogmajError):
    """Breakpoints do not form a partition 0 = t_0 < ... < t_m = 1."""


class NotMonotone(LogmajError):
    """Step values are not non-increasing."""


class OutOfDomain(LogmajError):
    """Evaluation point outside the function's domain convention."""


class NegativeValues(LogmajError):
    """Operation requires a non-negative step function."""


class NotInvertible(LogmajError):
    """Operation requires strictly positive values / an invertible matrix."""


class MeasureMismatch(LogmajError):
    """Piece measures do not sum to the length of [0, 1]."""


class BadIntervalSet(LogmajError):
    """Intervals are not disjoint, sorted subintervals of [0, 1]."""


# -- matrix kernel -----------------------------------------------------------

class NotHermitian(LogmajError):
    """Matrix is not Hermitian within tolerance."""


class NoConvergence(LogmajError):
    """Iterative kernel exceeded its sweep cap."""


class Singular(LogmajError):
    """Matrix is singular (smallest singular value below threshold)."""


class NotPositive(LogmajError):
    """Matrix is not positive semidefinite within tolerance."""


# -- checkers ----------------------------------------------------------------

class NotStrictContraction(LogmajError):
    """Operator norm exceeds 1 - delta."""


class NormNotAboveOne(LogmajError):
    """Checker requires operator norm strictly above 1."""


class ContractionRequired(LogmajError):
    """Checker item requires a positive contraction (0 <= x, ||x|| <= 1)."""


class WeightsInvalid(LogmajError):
    """Weights must be positive and sum to 1."""


class NotPositiveInvertible(LogmajError):
    """Inputs must be positive and invertible."""


class ZeroOnK(LogmajError):
    """Integrand vanishes somewhere on the integration set."""


class OutOfRange(LogmajError):
    """Scalar parameter outside its admissible range."""


# -- harness -----------------------------------------------------------------

class ConfigInvalid(LogmajError):
    """Suite configuration violates its invariants."""
