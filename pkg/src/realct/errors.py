"""Exception hierarchy shared by every module.

The CLI maps any :class:`RealctError` to exit status 1.
"""


class RealctError(Exception):
    """Base class for domain errors (parse, precondition, transform)."""


class ZeroDenominatorError(RealctError, ZeroDivisionError):
    pass


class ParseError(RealctError):
    """Malformed input text; carries the offending line or position."""

    def __init__(self, message, line=None, pos=None):
        self.line = line
        self.pos = pos
        if line is not None:
            message = f"{message}, line {line}"
        elif pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class PreconditionError(RealctError, ValueError):
    pass


class UnsupportedTransformError(RealctError):
    """The input lies outside what a program/formula transformation accepts."""


class IncompleteAssignmentError(RealctError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "incomplete assignment"


class UndefinedIntermediateError(RealctError, ZeroDivisionError):
    """A solution-mapping recipe divided by zero."""


class IrrationalWitnessError(RealctError):
    """A solution-mapping recipe needs a square root that is not rational."""


class DegeneracyError(RealctError):
    pass


class NonSimpleInputError(RealctError):
    pass


class InvalidArrangementError(RealctError):
    pass
