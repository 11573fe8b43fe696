"""Exception hierarchy shared by all modules."""


class QuiverError(Exception):
    """Base class for every error raised by this package."""


class NotSkewSymmetric(QuiverError, ValueError):
    pass


class IndexOutOfRange(QuiverError, IndexError):
    pass


class NonPositivePoint(QuiverError, ValueError):
    pass


class NotPeriodic(QuiverError, ValueError):
    """The requested operation needs a verified mutation period."""


class ZeroScale(QuiverError, ValueError):
    pass


class ShapeMismatch(QuiverError, ValueError):
    pass


class RankDeficient(QuiverError, ValueError):
    pass


class NotSymplecticChange(QuiverError, ValueError):
    pass


class FullRank(QuiverError, ValueError):
    """The form has trivial kernel, so there is nothing to test along fibers."""


class ResidualRankError(QuiverError, ArithmeticError):
    """Internal consistency failure of the Darboux construction."""


class UnknownFamily(QuiverError, ValueError):
    pass


class MalformedDocument(QuiverError, ValueError):
    pass
