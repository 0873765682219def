"""Custom exceptions for sepmax.

Each exception carries the process exit code the CLI maps it to.
"""

from __future__ import annotations

from sepmax.config import EXIT_BUDGET, EXIT_INFEASIBLE, EXIT_VALIDATION


class SepmaxError(Exception):
    """Base exception for all sepmax errors."""

    exit_code: int = 1


class InstanceFormatError(SepmaxError):
    """Raised when an instance, campaign or report file cannot be parsed or validated."""

    exit_code = EXIT_VALIDATION


class InvalidSubsetError(SepmaxError):
    """Raised when a subset references indices outside the ground set."""

    exit_code = EXIT_VALIDATION


class OracleValueError(SepmaxError):
    """Raised when a set function returns a negative or non-finite value."""

    exit_code = EXIT_VALIDATION


class ExhaustiveLimitError(SepmaxError):
    """Raised when an exhaustive check is requested on a ground set that is too large."""

    exit_code = EXIT_BUDGET

    def __init__(self, size: int, limit: int) -> None:
        super().__init__(
            f"Ground set of size {size} exceeds the exhaustive limit {limit}; "
            "use sampled mode instead."
        )
        self.size = size
        self.limit = limit


class EnumerationBudgetError(SepmaxError):
    """Raised when a subset enumeration would exceed the configured budget."""

    exit_code = EXIT_BUDGET

    def __init__(self, required: int, budget: int) -> None:
        super().__init__(f"Enumeration needs {required} subsets but the budget is {budget}.")
        self.required = required
        self.budget = budget


class RunBudgetError(SepmaxError):
    """Raised when a randomized solver would need more restarts than allowed."""

    exit_code = EXIT_BUDGET

    def __init__(self, required: float, budget: int) -> None:
        super().__init__(
            f"Solver needs {required:.0f} single runs but the run budget is {budget}."
        )
        self.required = required
        self.budget = budget


class InvalidParamsError(SepmaxError):
    """Raised when solver or adapter parameters are out of range."""

    exit_code = EXIT_INFEASIBLE


class InfeasibleParamsError(SepmaxError):
    """Raised when generator structure parameters cannot be achieved."""

    exit_code = EXIT_INFEASIBLE


class DegenerateInstanceError(SepmaxError):
    """Raised when an instance has no meaningful optimization target."""

    exit_code = EXIT_INFEASIBLE
