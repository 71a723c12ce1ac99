"""Exception types raised by the library."""


class MubError(ValueError):
    """Base class for all library errors."""


class DimensionMismatch(MubError):
    pass


class NotMonomial(MubError):
    """The matrix is not in the monomial group (one unimodular entry per row and column)."""


class UnitaryRequired(MubError):
    pass


class NotHadamard(MubError):
    pass


class NotAMubList(MubError):
    """Some pair of bases in the list is not mutually unbiased."""


class LengthMismatch(MubError):
    pass


class DimensionTooLarge(MubError):
    pass


class UnexpectedSolutionSpace(MubError):
    """A (rho, sigma) component yielded a solution space the stabilizer search cannot use.

    Carries the offending permutation pair and the nullspace dimension.
    """

    def __init__(self, message, rho=None, sigma=None, dim=None):
        super().__init__(message)
        self.rho = rho
        self.sigma = sigma
        self.dim = dim
