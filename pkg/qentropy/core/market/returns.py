"""
Log returns, normalized return panels, correlation matrices and the
amplitude-encoded data state.

For N_s stocks over T returns the normalized coefficients are

    a_nt = (r_nt - <r_n>) / (sigma_n * sqrt(N_s * T))

with population mean and standard deviation (divisor T), which makes
sum_nt a_nt^2 = 1 and therefore Tr(C) = 1 for C = a a^T.
"""

import math
from dataclasses import dataclass
from datetime import date
from typing import Dict, Sequence, Tuple

import numpy as np

from ...utils.errors import ArgumentError, DataError, DegenerateDataError, ShapeError
from ..sim.statevector import StateVector
from .prices import PriceSeries

NORMALIZATION_TOLERANCE = 1e-10
_DEGENERATE_SIGMA = 1e-12


def log_returns(series: PriceSeries) -> np.ndarray:
    """r_t = ln(s_{t+1}) - ln(s_t) for consecutive observations."""
    if len(series.observations) < 2:
        raise ArgumentError(
            f"{series.symbol}: need at least 2 observations, got {len(series.observations)}"
        )
    return np.diff(np.log(series.prices))


def period_label(day: date) -> str:
    return f"{day:%Y-%m}"


@dataclass(frozen=True, eq=False)
class ReturnPanel:
    """N_s x T normalized returns with their raw log returns."""
    symbols: Tuple[str, ...]
    period_labels: Tuple[str, ...]
    a: np.ndarray
    raw_returns: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        a.setflags(write=False)
        raw = np.array(self.raw_returns, dtype=float)
        raw.setflags(write=False)
        if a.shape != (len(self.symbols), len(self.period_labels)) or raw.shape != a.shape:
            raise ShapeError(
                f"Panel shape {a.shape} does not match {len(self.symbols)} symbols x "
                f"{len(self.period_labels)} periods"
            )
        total = float(np.sum(a ** 2))
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise DataError(f"Panel is not normalized (sum a^2 = {total:.12g})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "raw_returns", raw)

    @property
    def n_stocks(self) -> int:
        return self.a.shape[0]

    @property
    def n_periods(self) -> int:
        return self.a.shape[1]


def normalize_returns(raw: np.ndarray, symbols: Sequence[str]) -> np.ndarray:
    """Row-wise centring and scaling of raw log returns to a_nt."""
    n_stocks, n_periods = raw.shape
    mean = raw.mean(axis=1, keepdims=True)
    sigma = raw.std(axis=1, ddof=0, keepdims=True)
    for symbol, s, m in zip(symbols, sigma[:, 0], mean[:, 0]):
        if not s > _DEGENERATE_SIGMA * max(1.0, abs(m)):
            raise DegenerateDataError(
                f"{symbol}: zero return variance over the window", symbol=symbol
            )
    return (raw - mean) / (sigma * math.sqrt(n_stocks * n_periods))


def build_return_panel(series_list: Sequence[PriceSeries], window: Sequence[date]) -> ReturnPanel:
    """Panel over ``window`` (T+1 consecutive dates giving T returns)."""
    window = list(window)
    if len(window) < 2:
        raise ArgumentError(f"Window needs at least 2 dates, got {len(window)}")
    if not series_list:
        raise ArgumentError("No price series given")
    rows = []
    for series in series_list:
        by_date: Dict[date, float] = series.as_dict()
        missing = [d for d in window if d not in by_date]
        if missing:
            raise DataError(f"{series.symbol}: no price on {missing[0].isoformat()}")
        windowed = PriceSeries(series.symbol, tuple((d, by_date[d]) for d in window))
        rows.append(log_returns(windowed))
    raw = np.vstack(rows)
    symbols = tuple(s.symbol for s in series_list)
    return ReturnPanel(
        symbols=symbols,
        period_labels=tuple(period_label(d) for d in window[1:]),
        a=normalize_returns(raw, symbols),
        raw_returns=raw,
    )


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """C = a a^T; symmetric, unit trace, positive semidefinite."""
    symbols: Tuple[str, ...]
    c: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.c))


def correlation_matrix(panel: ReturnPanel) -> CorrelationMatrix:
    c = panel.a @ panel.a.T
    c = 0.5 * (c + c.T)
    c.setflags(write=False)
    return CorrelationMatrix(panel.symbols, c)


def _is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def register_sizes(panel: ReturnPanel) -> Tuple[int, int]:
    """(n_s, t_s) qubit counts of the stock and time registers."""
    for name, size in (("stock count", panel.n_stocks), ("period count", panel.n_periods)):
        if not _is_power_of_two(size):
            raise ShapeError(
                f"{name} {size} is not a power of two; pad or trim the data "
                "explicitly (zero-padding is not applied automatically)"
            )
    return panel.n_stocks.bit_length() - 1, panel.n_periods.bit_length() - 1


def data_statevector(panel: ReturnPanel) -> StateVector:
    """|data> = sum_nt a_nt |n>_stock |t>_time (amplitude index n*T + t)."""
    n_s, t_s = register_sizes(panel)
    return StateVector(n_s + t_s, panel.a.reshape(-1))
