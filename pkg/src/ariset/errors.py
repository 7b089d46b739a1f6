"""Exception types raised across the package."""


class RiccatiError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(RiccatiError, ValueError):
    """Malformed input: wrong shape, non-finite entries, asymmetry, bad norm."""


class DegenerateSpectrum(RiccatiError):
    """Eigenvalue clusters too close to separate or reorder reliably.

    Carries the offending gap in ``gap`` when it is known.
    """

    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class SingularSylvester(RiccatiError):
    """spec(F) and spec(-G) overlap within tolerance; FX + XG = C has no
    unique solution."""


class NotHurwitz(RiccatiError):
    """Coefficient matrix has an eigenvalue with real part >= -tol."""


class SingularBlock(RiccatiError):
    """The block to be eliminated in a Schur complement is singular."""


class NonInvariantSelection(RiccatiError):
    """Selected Schur blocks do not span an invariant subspace."""


class SingularY(RiccatiError):
    """The Gramian-like solution Y of the reduced Lyapunov equation is
    singular; the selected block set admits no full-rank solution."""


class NoBaseSolution(RiccatiError):
    """No base ARE solution of the requested spectral kind exists."""


class BaseResidualTooLarge(RiccatiError):
    """A user-supplied base solution fails residual verification."""


class Uncontrollable(RiccatiError):
    """Operation requires a controllable pair; the solution set is
    unbounded and extremal solutions do not exist."""


class NotRHPSelection(RiccatiError):
    """Parametrization requires all selected blocks strictly in the open
    right half plane."""


class SingularInput(RiccatiError):
    """A matrix that must be inverted is singular within rank tolerance."""


class NotASolution(RiccatiError):
    """The supplied matrix violates the Riccati inequality it is claimed
    to satisfy (recovered parameter indefinite)."""


class NotAnEquationSolution(RiccatiError):
    """Residual is not zero within tolerance; the operation only applies
    to exact equation solutions."""
