"""Exception types shared across the package."""


class EquimultError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(EquimultError):
    """Operands live in different rings or free modules of different rank."""


class ZeroInputError(EquimultError):
    """An operation that needs a nonzero input received zero."""


class BudgetExceededError(EquimultError):
    """A step or size budget was exhausted before the computation finished.

    This is a distinguished outcome, never a wrong answer: callers may retry
    with a larger budget.
    """

    def __init__(self, message, steps=None):
        super().__init__(message)
        self.steps = steps


class GenericityError(EquimultError):
    """A random choice failed validation more times than the redraw limit."""


class StabilizationError(EquimultError):
    """A truncation or difference scheme never met its certificate."""


class SessionParseError(EquimultError):
    """Syntax or name-resolution error in a session script."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
