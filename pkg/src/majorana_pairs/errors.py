"""Exception hierarchy shared by every module of the package."""

__all__ = [
    "PairError",
    "NonSquare",
    "BadDimension",
    "DimensionMismatch",
    "OddDimension",
    "NotHermitian",
    "NotInvolution",
    "UnbalancedSpectrum",
    "NotCertified",
    "NoConvergence",
    "TruncationNotConverged",
    "ParseError",
    "IoError",
]


class PairError(Exception):
    """Base class for all errors raised by majorana_pairs."""


class NonSquare(PairError, ValueError):
    pass


class BadDimension(PairError, ValueError):
    pass


class DimensionMismatch(PairError, ValueError):
    pass


class OddDimension(PairError, ValueError):
    """No anticommuting pair of involutions exists in odd dimension."""

    def __init__(self, n):
        super().__init__(
            f"dimension {n} is odd: det(AB) = (-1)^n det(AB) with det(AB) != 0 "
            "rules out A^2 = B^2 = I, AB + BA = 0"
        )
        self.n = n


class NotHermitian(PairError, ValueError):
    pass


class NotInvolution(PairError, ValueError):
    pass


class UnbalancedSpectrum(PairError, ValueError):
    pass


class NotCertified(PairError, ValueError):
    """A candidate pair failed verification at the requested tolerance."""

    def __init__(self, report):
        super().__init__(f"pair failed verification: {report}")
        self.report = report


class NoConvergence(PairError, ArithmeticError):
    pass


class TruncationNotConverged(PairError, RuntimeWarning):
    """Issued as a warning; the truncated series value is still returned."""


class ParseError(PairError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class IoError(PairError, OSError):
    pass
