"""Exception hierarchy shared by all modules."""


class GeometryError(ValueError):
    """Base class for every precondition failure raised by the toolkit."""


# field
class NonSquarefreeDiscriminant(GeometryError):
    pass


class MixedDiscriminants(GeometryError):
    pass


class NotASquare(GeometryError):
    pass


class DivisionByZero(GeometryError, ZeroDivisionError):
    pass


# projective
class CoincidentArguments(GeometryError):
    pass


class UnderdeterminedConic(GeometryError):
    pass


class CenterAtInfinity(GeometryError):
    pass


class DegenerateConic(GeometryError):
    pass


class PointNotOnConic(GeometryError):
    pass


class NoSharedInvolution(GeometryError):
    pass


class CollinearTriple(GeometryError):
    pass


class PointAtInfinity(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


# triangle
class PointOnSideline(GeometryError):
    pass


class PointOnAnticomplementarySide(GeometryError):
    pass


class DegenerateAxis(GeometryError):
    pass


class HypothesisViolated(GeometryError):
    def __init__(self, flag: str, message: str = ""):
        self.flag = flag
        super().__init__(message or f"hypothesis violated: {flag}")


class InternalInconsistency(AssertionError):
    """Two routes that must agree produced different answers."""


# locus
class LineNotMeetingCurveProperly(GeometryError):
    pass


class NotOnCurve(GeometryError):
    pass


class SingularFiber(GeometryError):
    pass


class ExceptionalFiber(GeometryError):
    pass


# construct
class OutsideArc(GeometryError):
    pass
