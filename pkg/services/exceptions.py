"""
Error types shared by the credit services.

Everything a caller can fix (bad ranking code, malformed publication rows,
unwritable report destination) derives from ``CreditError``. Commands turn it
into exit code 2 and views into HTTP 400. ``NumericalFault`` is reserved for
broken internal invariants and is never caused by user input.
"""

from typing import Iterable, List, Tuple


class CreditError(ValueError):
    """Base class for input and validation failures."""


class RankingCodeError(CreditError):
    pass


class GroupStructureError(CreditError):
    pass


class PublicationFormatError(CreditError):
    """
    Raised by the publication loader with one diagnostic per offending row.

    Args:
        diagnostics: (row_number, message) pairs, row numbers 1-based.
    """

    def __init__(self, diagnostics: Iterable[Tuple[int, str]]):
        self.diagnostics: List[Tuple[int, str]] = list(diagnostics)
        super().__init__(str(self))

    def __str__(self) -> str:
        if not self.diagnostics:
            return "Malformed publication input"
        return "\n".join(
            f"row {row}: {message}" if row else message
            for row, message in self.diagnostics
        )


class ReportWriteError(CreditError):
    pass


class NumericalFault(ArithmeticError):
    """An internal numerical invariant did not hold."""
