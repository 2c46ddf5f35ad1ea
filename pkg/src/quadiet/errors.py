"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class QuadIETError(Exception):
    """Base class for every error raised by this package."""


class ZeroDenominator(QuadIETError, ZeroDivisionError):
    pass


class DivisionByZero(QuadIETError, ZeroDivisionError):
    pass


class NonSquareFreeDiscriminant(QuadIETError, ValueError):
    pass


class DiscriminantMismatch(QuadIETError, ValueError):
    pass


class NotRingElement(QuadIETError, ValueError):
    pass


class NotContained(QuadIETError, ValueError):
    pass


class NonBijectivePermutation(QuadIETError, ValueError):
    pass


class NonPositiveLength(QuadIETError, ValueError):
    pass


class OutOfDomain(QuadIETError, ValueError):
    pass


class EmptyInterval(QuadIETError, ValueError):
    pass


class NotTwoIntervals(QuadIETError, ValueError):
    pass


class StepCapExceeded(QuadIETError, RuntimeError):
    """An orbit scan ran past its step budget.

    Minimal transformations always terminate these scans, so hitting the cap
    usually means the input is not minimal.
    """


class Connection(QuadIETError):
    """Rauzy induction degenerated because two boundary candidates coincide."""


class InternalMismatch(QuadIETError, AssertionError):
    """The one-step Rauzy update disagreed with the first-return construction."""


class ClassBudgetExceeded(QuadIETError, RuntimeError):
    pass


class SpecSyntaxError(QuadIETError, ValueError):
    """Parse failure in an IET specification, with 1-based line/column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
