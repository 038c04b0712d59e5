"""Exception types shared across the package."""


class LatticeError(Exception):
    """Base class for every structure, operator, and law-checking error."""


class DuplicateElementError(LatticeError):
    """An element name was declared more than once."""


class UnknownNameError(LatticeError):
    """A cover or subset referenced an undeclared element name."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class CycleError(LatticeError):
    """The order relation has a cycle, violating antisymmetry."""


class NoMeetError(LatticeError):
    """Two elements have no greatest common lower bound."""

    def __init__(self, left, right):
        super().__init__(f"elements {left!r} and {right!r} have no meet")
        self.left = left
        self.right = right


class NoBottomError(LatticeError):
    """The poset has no least element."""


class EmptyOperandError(LatticeError):
    """A set-level operator was applied to the empty set."""


class RequiresBoundedError(LatticeError):
    """The requested check only makes sense on a structure with a top."""


class NotEquivalenceError(LatticeError):
    """A relation expected to be an equivalence is not one."""


class NotAFilterError(LatticeError):
    """A subset expected to be a filter is not one."""


class TooLargeError(LatticeError):
    """The carrier exceeds the size cap of an exhaustive procedure."""


class RetriesExhaustedError(LatticeError):
    """Random generation failed to produce a valid structure within the cap."""


class InvalidSpecError(LatticeError):
    """A structure specification string or value is malformed."""


class ParseError(LatticeError):
    """A term or equation failed to parse."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class StructureSyntaxError(LatticeError):
    """A structure file is malformed."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
