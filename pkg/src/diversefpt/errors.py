"""Exception hierarchy shared by the solvers and the command line."""

from __future__ import annotations


class DiverseError(Exception):
    """Base class for every error raised by this package."""


class InputError(DiverseError, ValueError):
    """Malformed or out-of-range input (bad element id, bad parameters)."""


class ContractError(DiverseError):
    """A caller violated an operation's precondition."""


class BudgetError(DiverseError):
    """A configured enumeration or recursion cap was exceeded.

    Raised instead of returning an answer, so a capped run never reports a
    wrong Yes/No.
    """


class DomainError(DiverseError, ArithmeticError):
    """Arithmetic outside an operation's domain, e.g. inverting zero."""


class ParseError(DiverseError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
