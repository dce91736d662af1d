"""Exception types raised by the bccanon library."""


class BccanonError(Exception):
    """Base class for all library-specific failures."""


class NotHermitian(BccanonError):
    """Input matrix deviates from its conjugate transpose beyond tolerance."""


class NotUnitary(BccanonError):
    """Input matrix fails the unitarity residual check."""


class ConvergenceFailure(BccanonError):
    """A backend eigenvalue/SVD/CSD iteration did not converge."""


class PartitionMismatch(BccanonError):
    """CS-decomposition partition (p, q) is inconsistent with the matrix."""


class NotSelfAdjoint(BccanonError):
    """Boundary pair violates the rank or Gram self-adjointness criterion."""


class RankDeficient(BccanonError):
    """Eigenspace coefficient matrix is numerically singular."""


class UnsupportedOrder(BccanonError):
    """Operation is undefined for the requested matrix order/parity."""


class OddSize(BccanonError):
    """Even-order operation received an odd-sized pair."""


class InvalidTarget(BccanonError):
    """Requested unit-cosine count is outside the admissible range."""


class ParseError(BccanonError):
    """Matrix file is malformed or contains non-finite entries."""


class DimensionMismatch(ParseError):
    """Matrix file data does not match its declared shape."""
