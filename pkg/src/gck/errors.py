"""Exception hierarchy shared by all modules."""


class GCKError(Exception):
    pass


class ParseError(GCKError, ValueError):
    pass


class UnknownCoordinate(GCKError, KeyError):
    pass


class DimensionMismatch(GCKError, ValueError):
    pass


class ChartMismatch(GCKError, ValueError):
    pass


class NondegenerateInverseUnavailable(GCKError, ValueError):
    """The 2-form (or bivector) has no polynomial inverse: its determinant is not a nonzero constant."""


class DegeneratePi(NondegenerateInverseUnavailable):
    pass


class CommutationFailure(GCKError, ValueError):
    pass


class NotRegularPoint(GCKError, ValueError):
    pass


class NonClosedB(GCKError, ValueError):
    pass


class PreconditionFailure(GCKError, ValueError):
    pass


class NotInIsotropy(GCKError, ValueError):
    pass


class ResolutionError(GCKError, KeyError):
    pass
