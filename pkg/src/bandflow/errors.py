"""Exception types shared across the package."""


class BandflowError(Exception):
    """Base class for all bandflow-specific failures."""


class EventNotReached(BandflowError):
    """The profile integration never attained the requested height.

    Signals integration blow-up or an inconsistent surface description;
    cannot happen for a validated surface.
    """


class ToleranceFailure(BandflowError):
    """A constructed object drifted outside its advertised invariant bounds."""


class QuadratureFailure(BandflowError):
    """Adaptive quadrature could not meet the requested tolerance."""


class NegativeRadicand(BandflowError):
    """A radicand that should be nonnegative fell below the roundoff window."""


class DivisionNearZero(BandflowError):
    """A quotient was requested at a point where the denominator is ~ 0."""


class BoundaryViolation(BandflowError):
    """A radial bump fails to vanish at the band boundary."""


class TangencyViolation(BandflowError):
    """A vector field (or its stream potential) is not tangent to the boundary."""


class ConvergenceFailure(BandflowError):
    """An iterative solver (eigenvalue scan, mode sweep) failed to settle."""
