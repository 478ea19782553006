"""Exception hierarchy shared by every loopk module.

Input problems (bad arguments, violated preconditions) derive from
:class:`InputError`; failures discovered while computing derive from
:class:`ComputationError`.  The command line maps them to exit codes 2 and 3.
"""


class LoopKError(Exception):
    """Base class for all loopk errors."""


class InputError(LoopKError, ValueError):
    """A request violates a documented precondition."""


class ComputationError(LoopKError, ArithmeticError):
    """A computation could not be completed."""


class NotDivisibleError(ComputationError):
    """Exact division failed; ``remainder`` is a witness that it cannot succeed."""

    def __init__(self, message, remainder=None, quotient=None):
        super().__init__(message)
        self.remainder = remainder
        self.quotient = quotient


class NotAUnitError(ComputationError):
    """A series or polynomial that was asked to be inverted is not a unit."""


class WindowError(InputError):
    """A truncation window is too small to hold the requested result."""


class StabilizationError(ComputationError):
    """A windowed presentation did not stabilize within the allowed bound."""


class FoldingLimitError(ComputationError):
    """The alcove folding loop exceeded its iteration cap."""
