"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CoarseMengerError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CoarseMengerError, ValueError):
    """Malformed or out-of-range input (bad vertex id, bad parameter, ...)."""


class CapacityError(CoarseMengerError):
    """The request exceeds a hard size cap of an exhaustive routine."""


class DisciplineError(InputError):
    """A path sequence violates the growth discipline of ``check_web_growth``."""

    def __init__(self, index: int, message: str):
        super().__init__(f"M[{index}]: {message}")
        self.index = index


class PreconditionError(CoarseMengerError):
    """A jump set lacks the jumping power an operation requires.

    ``barrier`` is a barrier that no member of the set jumps, when one is known.
    """

    def __init__(self, message: str, barrier=None):
        super().__init__(message)
        self.barrier = barrier


class InvariantError(CoarseMengerError, RuntimeError):
    """An internal guarantee failed. This signals a bug, not a legitimate outcome."""
