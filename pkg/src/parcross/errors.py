"""Exception types shared across the package."""


class ParcrossError(Exception):
    """Base class for all package errors."""


class ContextMismatchError(ParcrossError, ValueError):
    """Operands were built over different group/projection contexts."""


class GroupError(ParcrossError, ValueError):
    """Invalid group data or an operation undefined for the group kind."""


class ParseError(ParcrossError, ValueError):
    """Malformed word, expression or input file."""


class EnumerationCapError(ParcrossError, RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, needed, cap, what="assignments"):
        self.needed = needed
        self.cap = cap
        super().__init__(f"enumeration of {needed} {what} exceeds cap {cap}")
