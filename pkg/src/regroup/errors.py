"""Exception hierarchy.

Everything raised deliberately by the library derives from `RegroupError`,
which lets the command-line front end separate bad input (exit code 2) from
programming errors.
"""


class RegroupError(Exception):
    """Base class for all library errors."""


class ParseError(RegroupError, ValueError):
    """Malformed textual or JSON input."""


class MembershipError(RegroupError, ValueError):
    """A value is not an element of the group it was used with."""


class GroupMismatchError(RegroupError, ValueError):
    """Two operands live on different groups."""


class WindowError(RegroupError, ValueError):
    """A window is invalid for the group it is applied to."""


class MapConstructionError(RegroupError, ValueError):
    """Piece or table data does not describe a homeomorphism of the group."""


class NotABijectionError(MapConstructionError):
    """Table data does not define a bijection of the lattice."""


class ClosureError(MapConstructionError):
    """A piecewise-linear map would not send the group onto itself."""


class UnsupportedMapError(RegroupError, TypeError):
    """The requested symbolic operation is not available for this map form."""


class FixedPointError(RegroupError):
    """The map does not have exactly one fixed point."""

    def __init__(self, message, points=(), rejected=()):
        super().__init__(message)
        self.points = tuple(points)
        self.rejected = tuple(rejected)


class ContinuumOfFixedPointsError(FixedPointError):
    """A piece of the map is the identity, so fixed points are not isolated."""


class NotAnInvolutionError(RegroupError):
    pass


class PartitionError(RegroupError):
    """A, f(A) and {e} fail to partition a window."""


class GluingError(RegroupError):
    """The two halves of the glued map disagree at the fixed point."""


class UnsupportedInvolutionError(RegroupError):
    """Dense involution outside the order-reversing case."""


class NeutralShiftError(RegroupError):
    """Shift transport requested for the neutral shift."""


class PreconditionError(RegroupError):
    pass
