"""Exception hierarchy shared by every module."""


class AesStabError(Exception):
    """Base class for all package errors."""


class InputError(AesStabError, ValueError):
    """Rejected input: out-of-range vertex, loop, bad parameter, ..."""


class CapacityError(AesStabError):
    """The request exceeds an exhaustive-search cap."""


class ConstructionError(AesStabError):
    """A randomized or feasibility-guarded construction failed."""


class PreconditionError(InputError):
    """A degree (or similar) hypothesis does not hold for the input graph."""

    def __init__(self, message, deficit=None):
        super().__init__(message)
        self.deficit = deficit


class Graph6Error(InputError):
    """Malformed graph6 text; ``offset`` is the byte position of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class SearchBudgetExceeded(AesStabError):
    """A budgeted search ran out of nodes before reaching a definite answer."""
