"""Exception hierarchy shared by all dvconv modules."""


class DvconvError(Exception):
    """Base class for all dvconv errors."""


class ZeroElement(DvconvError):
    """Requested the inverse of 0 in Z_d."""


class NoSolution(DvconvError):
    """A modular linear system or parameter search has no solution."""


class NotInvertible(DvconvError):
    """Parameter matrix is singular mod d."""


class NotPositive(DvconvError):
    """Parameter matrix has a zero entry mod d."""


class NotHermitian(DvconvError):
    """Operator deviates from Hermiticity beyond tolerance."""


class NotUnitary(DvconvError):
    """Operator deviates from unitarity beyond tolerance."""


class DomainError(DvconvError):
    """Scalar function undefined on a clamped eigenvalue."""


class DimensionMismatch(DvconvError):
    """Operator dimensions are inconsistent."""


class UnsupportedScale(DvconvError):
    """Enumeration requested beyond desk scale (n > 1 or large d)."""


class UnsupportedDimension(DvconvError):
    """Convolution requested at a local dimension where no positive
    invertible parameter matrix exists (d = 2) or where the named
    spec has no parameters (beam splitter / amplifier at d in {3, 5})."""


class InvalidGroup(DvconvError):
    """Stabilizer generators do not commute or are dependent."""


class InvalidState(DvconvError):
    """Density-matrix invariants violated beyond tolerance."""


class PhaseNotRoot(DvconvError):
    """A unit-modulus characteristic value is not a d-th root of unity."""


class RankDeficient(DvconvError):
    """Operation requires a full-rank state."""


class CovarianceViolation(DvconvError):
    """Weyl-orbit ensemble failed the covariance or average-output check."""


class ParseError(DvconvError):
    """Malformed CLI input or state file."""
