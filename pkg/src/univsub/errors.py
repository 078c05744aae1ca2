"""Exception types raised across the package."""


class UnivsubError(Exception):
    """Base class for all library errors."""


class UnsupportedGroup(UnivsubError):
    pass


class ParentMismatch(UnivsubError):
    pass


class GroupMismatch(UnivsubError):
    pass


class RankMismatch(UnivsubError):
    """Quotient rank differs from the base dimension (the dimension condition fails)."""


class GenericityFailure(UnivsubError):
    pass


class NotMaximalRank(UnivsubError):
    def __init__(self, message, euler_characteristic=0):
        super().__init__(message)
        self.euler_characteristic = euler_characteristic


class UnsupportedFactor(UnivsubError):
    pass


class IndexOutOfRange(UnivsubError):
    pass


class ZeroVector(UnivsubError):
    pass


class SearchBudgetExceeded(UnivsubError):
    pass


class NotSolvable(UnivsubError):
    pass


class EigenvectorFailure(UnivsubError):
    pass


class NotProper(UnivsubError):
    pass


class NotCentral(UnivsubError):
    pass


class NotBlockwise(UnivsubError):
    pass


class InvalidRoots(UnivsubError):
    pass


class DegenerateDraws(UnivsubError):
    pass


class ConfigError(UnivsubError):
    pass
