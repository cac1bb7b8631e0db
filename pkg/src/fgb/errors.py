"""Exception types shared across the package."""


class FGBError(Exception):
    """Base class for all package errors."""


class IllegalGenerator(FGBError, ValueError):
    pass


class RankMismatch(FGBError, ValueError):
    pass


class IllegalSymbol(FGBError, ValueError):
    pass


class NotInvertible(FGBError, ValueError):
    pass


class NotAMember(FGBError, ValueError):
    pass


class IndexOutOfRange(FGBError, IndexError):
    pass


class OddRank(FGBError, ValueError):
    pass


class KZero(FGBError, ValueError):
    pass


class InadmissibleEdge(FGBError, ValueError):
    pass


class BudgetExceeded(FGBError, RuntimeError):
    pass


class EvaluationRankMismatch(FGBError, RuntimeError):
    """Raised when a relation evaluates across ranks; indicates a bug."""
