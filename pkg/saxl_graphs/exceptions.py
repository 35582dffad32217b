""" This module contains all exceptions used in the saxl_graphs package. The exceptions are grouped by the module that raises them: permutations and groups first, then constructions, then the graph and search layers, then the command line."""


class MalformedPermutation(Exception):
    pass


class DegreeMismatch(Exception):
    pass


class PointOutOfRange(Exception):
    pass


class ChainConstructionError(Exception):
    pass


class NotInGroup(Exception):
    pass


class NotASubgroup(Exception):
    pass


class IntransitiveGroup(Exception):
    pass


class ImprimitiveGroup(Exception):
    pass


class CapExceeded(Exception):
    pass


class NotPrime(Exception):
    pass


class UnsupportedVariant(Exception):
    pass


class SingularMatrix(Exception):
    pass


class MissingAutomorphismData(Exception):
    pass


class NotSimple(Exception):
    pass


class RecipeParseError(Exception):
    """Raised when a recipe string cannot be parsed.

    Attributes:
        position (int): Column (0-indexed) where parsing failed.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at column {position})")
        self.position = position


class FixtureNotFound(Exception):
    pass


class FixtureSearchFailed(Exception):
    pass


class InvalidPartition(Exception):
    pass


class SameVertex(Exception):
    pass


class SaxlGraphUndefined(Exception):
    pass


class BaseSizeTooSmall(Exception):
    pass


class TrivialGroup(Exception):
    pass


class InvalidProbability(Exception):
    pass


class InvariantBreach(Exception):
    pass


class UnknownSuite(Exception):
    pass


class InvalidConfigKey(Exception):
    pass


# Every exception above; analyses catch these and record them as skipped.
DOMAIN_ERRORS = tuple(
    value for value in list(globals().values()) if isinstance(value, type) and issubclass(value, Exception)
)
