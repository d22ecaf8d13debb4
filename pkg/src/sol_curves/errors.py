"""Exception types raised by sol_curves."""


class SolCurvesError(Exception):
    """Base class for all library errors."""


class DivisionByZeroJet(SolCurvesError, ZeroDivisionError):
    """Jet division by a series whose constant term is zero."""


class DomainError(SolCurvesError, ValueError):
    """Elementary function evaluated outside its real domain."""


class OrderExceeded(SolCurvesError, IndexError):
    """Requested derivative order exceeds the jet order."""


class OrderExhausted(SolCurvesError, ValueError):
    """Not enough derivative slots left to differentiate again."""


class NotUnitSpeed(SolCurvesError, ValueError):
    """Input curve is not parametrized by arc length."""


class TorsionUndefined(SolCurvesError, ValueError):
    pass


class GeodesicDegeneracy(SolCurvesError, ValueError):
    """Geodesic curvature vanishes, so the Frenet frame is undefined."""


class FrameInconsistency(SolCurvesError, ArithmeticError):
    """Two independent computations of a frame quantity disagree."""


class InvalidParams(SolCurvesError, ValueError):
    pass


class NoRootsFound(SolCurvesError, RuntimeError):
    pass


class FrameDrift(SolCurvesError, RuntimeError):
    """Integrated frame lost orthonormality beyond tolerance."""


class ZeroField(SolCurvesError, ValueError):
    pass
