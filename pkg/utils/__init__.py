import math
from decimal import Decimal
from typing import Iterable, Union

OUTPUT_FORMATS = ('plain', 'csv', 'json')


def format_share(value: Union[float, Decimal], precision: int) -> str:
    """
    Fixed-point rendering used by every human-readable table.

    Args:
        value (float | Decimal): Share, moment or estimate
        precision (int): Number of decimal places

    Returns:
        str: e.g. ``0.5111`` for precision 4
    """
    return f"{value:.{precision}f}"


def format_shares(values: Iterable[Union[float, Decimal]], precision: int, separator: str = " ") -> str:
    return separator.join(format_share(value, precision) for value in values)


def finite_or_none(value: float):
    """JSON has no inf/nan; they are emitted as null."""
    return value if math.isfinite(value) else None
