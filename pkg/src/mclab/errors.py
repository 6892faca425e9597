"""Exception hierarchy shared across the package."""


class MclabError(Exception):
    """Base class for all errors raised by this package."""


class UnboundVariableError(MclabError):
    """An expression referenced a variable that the assignment does not bind."""

    def __init__(self, name):
        super().__init__(f"unbound variable: {name}")
        self.name = name


class ScopeError(MclabError):
    """A formula referenced a variable outside the declared variable set."""


class CompositionError(MclabError):
    """Transition systems cannot be composed (conflicting declarations)."""


class CapacityError(MclabError):
    """An operation would exceed its configured size bound."""


class InapplicableOperatorError(MclabError):
    """An operator was applied in a state where its preconditions fail."""


class ExtensionError(MclabError):
    """Instance extension requested with too few variables."""


class ParseError(MclabError):
    """Syntax error with source position."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ManagerMismatchError(MclabError):
    """BDD operands belong to different managers."""


class OrderingError(MclabError):
    """A variable is missing from (or duplicated in) a BDD ordering."""


class UnsupportedFormulaError(MclabError):
    """Formula outside the supported fragment and fallback is disabled."""
