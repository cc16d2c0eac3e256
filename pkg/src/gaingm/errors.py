"""Exception hierarchy shared by the library and the CLI."""


class GainGraphError(Exception):
    """Base class for every error raised by gaingm."""


class GroupMismatchError(GainGraphError):
    """Operands live over different gain groups."""


class InfiniteGroupError(GainGraphError):
    """An operation needs to enumerate the group but the group is infinite."""


class UnsupportedFeatureError(GainGraphError):
    """The request is well formed but deliberately not supported."""


class ParseError(GainGraphError, ValueError):
    """Malformed element, graph or partition text."""


class ShapeError(GainGraphError, ValueError):
    """Matrix dimensions do not conform."""


class PlanError(GainGraphError):
    """A switching plan does not match the graph it is applied to."""


class NumericalError(GainGraphError, ArithmeticError):
    """A numerical routine failed a built-in consistency check."""


class NotHermitianError(GainGraphError, ValueError):
    """A spectral routine received a matrix that is not Hermitian."""
