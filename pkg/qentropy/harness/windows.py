"""
Sliding windows of consecutive months over an ingested price table.
"""

from datetime import date
from typing import List, Tuple

from toolz import sliding_window

from ..core.market.prices import PriceTable
from ..core.market.returns import period_label
from ..utils.errors import ArgumentError

Window = Tuple[date, ...]


def enumerate_windows(table: PriceTable, window_length: int) -> List[Window]:
    """
    Every run of ``window_length`` consecutive months, ordered by end month.

    A table of M months yields M - window_length + 1 windows.
    """
    if window_length < 2:
        raise ArgumentError(f"window_length must be at least 2, got {window_length}")
    if table.n_months < window_length:
        raise ArgumentError(
            f"Price table spans {table.n_months} months; a {window_length}-month window "
            "does not fit"
        )
    return list(sliding_window(window_length, table.dates))


def window_label(window: Window) -> str:
    """End month of the window as YYYY-MM."""
    return period_label(window[-1])
