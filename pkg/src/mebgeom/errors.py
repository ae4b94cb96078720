"""Exception hierarchy shared by every module."""


class GeometryError(ValueError):
    """Base class for invalid or unsupported geometric input."""


class EmptyInput(GeometryError):
    pass


class Undefined(GeometryError):
    """Measure is undefined for the given input (e.g. diameter of one point)."""


class DegenerateSimplex(GeometryError):
    pass


class DegenerateSupport(GeometryError):
    pass


class DegenerateHull(GeometryError):
    pass


class DegenerateInput(GeometryError):
    pass


class UnsupportedDimension(GeometryError):
    pass


class InstanceTooLarge(GeometryError):
    pass


class Infeasible(GeometryError):
    pass


class Unbounded(GeometryError):
    pass


class NotInHull(GeometryError):
    pass


class PreconditionFailed(GeometryError):
    pass


class TooFewPoints(GeometryError):
    pass


class HypothesisFailed(GeometryError):
    """A theorem's hypothesis does not hold; carries the offending subfamily."""

    def __init__(self, message, subfamily=None):
        super().__init__(message)
        self.subfamily = subfamily


class NumericalFault(RuntimeError):
    """A guaranteed inequality failed; signals floating-point trouble, not bad input."""
