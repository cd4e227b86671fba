"""Exception types raised by the harmlab library."""


class HarmlabError(Exception):
    """Base class for all harmlab errors."""


# -- curves ------------------------------------------------------------------

class NonPositiveCurvature(HarmlabError):
    """Curvature samples must be strictly positive."""


class TurningNumberMismatch(HarmlabError):
    """Integrated curvature is too far from one full turn."""


class InvalidAxes(HarmlabError):
    """Ellipse semi-axes must satisfy a >= b > 0."""


class PointNotOnBoundary(HarmlabError):
    """Query point does not lie on the boundary polyline."""


class PointOutside(HarmlabError):
    """Query point is not inside the domain."""


# -- boundary ----------------------------------------------------------------

class NonPositiveSpeed(HarmlabError):
    """Speed profile must be strictly positive."""


class InvalidEpsilon(HarmlabError):
    """Smoothing parameter must lie in (0, 1)."""


class InsufficientSamples(HarmlabError):
    """Too few samples for the requested number of Fourier modes."""


class NonMonotoneInput(HarmlabError):
    """Arc schedule must be nondecreasing."""


# -- harmonic maps -----------------------------------------------------------

class OutsideDisk(HarmlabError):
    """Evaluation point lies outside the closed unit disk."""


class OutsideOpenDisk(HarmlabError):
    """Evaluation point lies outside the open unit disk."""


class OutsideBall(HarmlabError):
    """Evaluation point lies outside the open unit ball."""


class VanishingFz(HarmlabError):
    """Analytic-part derivative vanishes, dilatation undefined."""


class NonPositiveJacobian(HarmlabError):
    """Operation requires a positive Jacobian."""


class DegreeTooLarge(HarmlabError):
    """Harmonic polynomial basis is only tabulated up to degree 6."""


class HessianTooSmall(HarmlabError):
    """Hessian determinant too close to zero for a log-based check."""


# -- differential operators --------------------------------------------------

class EvaluationOutOfDomain(HarmlabError):
    """Finite-difference stencil leaves the map's domain."""


class SingularMatrix(HarmlabError):
    """Distortion is undefined for singular derivative matrices."""


class OriginSingularity(HarmlabError):
    """Radial map with exponent below one is singular at the origin."""


class OutOfDomain(HarmlabError):
    """Sphere for a mean-value test leaves the field's domain."""


# -- claims / certification --------------------------------------------------

class HypothesisUnverifiable(HarmlabError):
    """A claim's hypothesis cannot be certified for this scenario."""


class NonConvexCurve(HarmlabError):
    """Certification requires a strictly convex target curve."""


class DegenerateSpeed(HarmlabError):
    """Certification requires a strictly positive boundary speed."""


# -- cli ---------------------------------------------------------------------

class ParseError(HarmlabError):
    """Scenario file failed to parse or validate."""


class UnknownClaim(ParseError):
    """Claim id is not in the registry."""


class UnknownField(HarmlabError):
    """Requested grid field is not available."""


class NumericsError(HarmlabError):
    """A numeric stage failed while running a scenario."""
