"""Exception hierarchy shared by every module."""


class CayleyError(Exception):
    """Base class for all errors raised by cayley3."""


class ParseError(CayleyError, ValueError):
    pass


class UnknownGenerator(ParseError):
    pass


class InconclusiveEnumeration(CayleyError):
    """Coset enumeration hit its limit before the question could be decided.

    This is not a claim that the group is infinite.
    """


class InfiniteOrUnknown(CayleyError):
    pass


class NotGenerating(CayleyError):
    pass


class UnknownVertex(CayleyError, KeyError):
    pass


class InvalidComplex(CayleyError, ValueError):
    pass


class DisconnectedComplex(CayleyError):
    pass


class NotEdgeRegular(CayleyError):
    pass


class RelatorWalkNotClosed(CayleyError):
    pass


class NotAnAction(CayleyError):
    pass


class InvalidRotation(CayleyError, ValueError):
    pass


class TransportConflict(CayleyError):
    pass


class InconsistentNesting(CayleyError):
    pass


class FaceNotSeparating(CayleyError):
    pass


class NotLocallyConnected(CayleyError):
    pass


class InvarianceRequired(CayleyError):
    pass


class NonUniqueCoordinateSwap(CayleyError):
    pass


class NotAnInvolution(CayleyError, ValueError):
    pass


class NotAnAutomorphism(CayleyError, ValueError):
    pass


class ActionNotFree(CayleyError):
    pass


class DisconnectedInput(CayleyError):
    pass


class NotPlane(CayleyError, ValueError):
    pass
