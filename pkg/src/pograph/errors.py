"""Shared exception types."""


class PographError(Exception):
    """Base class for errors raised by this package."""


class GuardExceededError(PographError):
    """An exact search was asked to run above its hard size guard."""


class BudgetExceededError(PographError):
    """A brute-force oracle ran out of its search budget.

    Budget exhaustion is a distinct outcome: it never stands in for a
    yes/no answer.
    """


class DisconnectedError(PographError):
    """Operation requires a connected graph."""


class NotPseudoOuterplanarError(PographError):
    """Operation requires a pseudo-outerplanar input."""


class DiagnosticError(PographError):
    """A constructive procedure fell off its proven case analysis.

    Raised when a reduction expected to be unavoidable finds no applicable
    case.  This signals a catalog reconstruction gap, never a wrong answer.
    """
