"""Error taxonomy shared by all modules.

Operational errors (bad input, exceeded caps) are ordinary exceptions a
caller is expected to handle.  ``InternalDefect`` marks runtime
assertions that must never fire on correct code; if one does, it is a
bug in this package, not in the input.
"""


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class NonAssociative(WorkbenchError):
    """Multiplication table fails associativity; carries the first bad triple."""

    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(f"(x*y)*z != x*(y*z) for x={x}, y={y}, z={z}")


class BadIdentity(WorkbenchError):
    """Claimed identity element does not act neutrally."""


class IndexOutOfRange(WorkbenchError):
    """An element or table entry is outside [0, size)."""


class IncompatibleCongruence(WorkbenchError):
    """Class map is not compatible with multiplication."""


class SizeCapExceeded(WorkbenchError):
    """A constructed monoid/automaton would exceed the configured size cap."""


class StateCapExceeded(WorkbenchError):
    """Subset construction would exceed the configured state cap."""


class SearchSpaceExceeded(WorkbenchError):
    """Identity check refused: |M|^#variables above the configured cap.

    Callers may shrink the monoid or raise the cap and retry.
    """

    def __init__(self, space, cap):
        self.space = space
        self.cap = cap
        super().__init__(f"assignment space {space} exceeds cap {cap}")


class UnboundVariable(WorkbenchError):
    """Term evaluation hit a variable missing from the assignment."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


class ParseError(WorkbenchError):
    """Syntax error in a textual input, with position and expectation."""

    def __init__(self, position, expected, text=""):
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected}")


class UnknownLetter(WorkbenchError):
    """A word uses a letter outside the declared alphabet."""


class PreconditionFailed(WorkbenchError):
    """An operation's stated precondition does not hold for the input."""


class CongruenceViolation(WorkbenchError):
    """Runtime spot-check of a claimed congruence failed (a defect)."""


class AlphabetExhausted(WorkbenchError):
    """Too many abstract letters to map injectively into a-z."""


class InternalDefect(WorkbenchError):
    """An invariant that must hold by construction was violated."""
