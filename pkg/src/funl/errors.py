"""Exception types raised across the package."""


class FunlError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(FunlError):
    """An iteration or query budget was exhausted before learning finished."""


class NotAutomatable(FunlError):
    """A hypothesis was requested for an observation pair failing closedness/consistency."""


class InternalError(FunlError):
    """A guarantee of the algorithm was violated; indicates a bug."""


class AlphabetMismatch(FunlError):
    pass


class DomainMismatch(FunlError):
    pass


class BadLetter(FunlError):
    pass


class AutomatonFormatError(FunlError):
    """Malformed automaton document. ``location`` is a JSON-path-like string."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
