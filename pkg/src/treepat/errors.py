"""Exception hierarchy shared by the library and the CLI."""


class TreepatError(Exception):
    """Base class for every error raised by treepat."""

    pass


class TreeSyntaxError(TreepatError, ValueError):
    """Raised when a tree literal does not match the grammar."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class TreeIndexError(TreepatError, ValueError):
    """Raised for an out-of-range (leaves, rank) pair or a non-positive leaf count."""

    pass


class EmptyPatternSetError(TreepatError, ValueError):
    """Raised when an operation needs at least one pattern."""

    pass


class RatfunError(TreepatError, ArithmeticError):
    pass


class RationalDivisionError(RatfunError, ZeroDivisionError):
    pass


class GrowthRateError(RatfunError):
    """Raised when a non-constant denominator has no positive real root."""

    pass


class RecursionMeasureError(TreepatError):
    """Raised if a sub-problem of the set recursion fails to shrink."""

    pass


class PermutationError(TreepatError, ValueError):
    pass


class ConfigError(TreepatError):
    """Raised for configuration values that cannot be coerced to their type."""

    pass


class OeisQueryError(TreepatError, ValueError):
    """Raised for sequences too short to look up."""

    pass
