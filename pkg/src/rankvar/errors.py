"""Exception types shared across the package."""


class RankvarError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(RankvarError):
    pass


class FieldMismatch(RankvarError):
    pass


class IncompatibleFields(RankvarError):
    pass


class SpecMismatch(RankvarError):
    pass


class NotFlat(RankvarError):
    """A pi-point image with no linear part."""


class NonHomogeneous(RankvarError):
    pass


class ZeroClass(RankvarError):
    pass


class UnitIdeal(RankvarError):
    pass


class SearchExhausted(RankvarError):
    """Noether normalization search ran out of candidates."""


class InvariantViolation(RankvarError):
    """A module failed the commuting / p-th power zero checks."""


class ParseError(RankvarError):
    pass


class UnknownSuite(RankvarError):
    pass
