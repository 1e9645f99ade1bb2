"""
Price series and CSV ingestion.

The input CSV holds one row per (month, ticker) with header
``date,symbol,open``. Dates are ISO-8601 calendar dates.
"""

import logging
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ...utils.errors import DataError

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("date", "symbol", "open")
_BUNDLED = Path(__file__).resolve().parents[2] / "data" / "monthly_open_xom_wmt_pg_msft.csv"


def bundled_prices_path() -> Path:
    """Monthly opening prices of XOM, WMT, PG and MSFT, Apr 2008 - Mar 2009."""
    return _BUNDLED


@dataclass(frozen=True)
class PriceSeries:
    """Dated prices of one ticker, strictly increasing in date."""
    symbol: str
    observations: Tuple[Tuple[date, float], ...]

    def __post_init__(self):
        observations = tuple((d, float(p)) for d, p in self.observations)
        for (previous, _), (current, _) in zip(observations, observations[1:]):
            if current <= previous:
                raise DataError(
                    f"{self.symbol}: dates must be strictly increasing ({previous} then {current})"
                )
        for day, price in observations:
            if not price > 0:
                raise DataError(f"{self.symbol}: non-positive price {price} on {day.isoformat()}")
        object.__setattr__(self, "observations", observations)

    @property
    def dates(self) -> List[date]:
        return [d for d, _ in self.observations]

    @property
    def prices(self) -> np.ndarray:
        return np.array([p for _, p in self.observations])

    def as_dict(self) -> Dict[date, float]:
        return dict(self.observations)


@dataclass(frozen=True, eq=False)
class PriceTable:
    """Symbols x dates grid of prices; NaN marks a missing observation."""
    symbols: Tuple[str, ...]
    dates: Tuple[date, ...]
    prices: np.ndarray

    def series(self, symbol: str) -> PriceSeries:
        try:
            row = self.prices[self.symbols.index(symbol)]
        except ValueError:
            raise DataError(f"Unknown symbol {symbol!r}") from None
        observations = tuple(
            (day, float(price)) for day, price in zip(self.dates, row) if not np.isnan(price)
        )
        return PriceSeries(symbol, observations)

    def all_series(self) -> List[PriceSeries]:
        return [self.series(symbol) for symbol in self.symbols]

    def window(self, dates: Sequence[date]) -> "PriceTable":
        """Sub-table over ``dates``, which must all be columns of this table."""
        column = {d: j for j, d in enumerate(self.dates)}
        missing = [d for d in dates if d not in column]
        if missing:
            raise DataError(f"Date {missing[0].isoformat()} not in price table")
        columns = [column[d] for d in dates]
        return PriceTable(self.symbols, tuple(dates), self.prices[:, columns].copy())

    @property
    def n_months(self) -> int:
        return len(self.dates)


def _parse_frame(frame: pd.DataFrame, source: str) -> PriceTable:
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise DataError(f"{source}: missing column(s) {', '.join(missing)}")
    frame = frame.loc[:, list(REQUIRED_COLUMNS)].copy()
    frame["symbol"] = frame["symbol"].astype(str).str.strip()
    try:
        frame["date"] = pd.to_datetime(frame["date"], format="%Y-%m-%d").dt.date
    except (ValueError, TypeError) as exc:
        raise DataError(f"{source}: unparseable date ({exc})") from exc
    try:
        frame["open"] = pd.to_numeric(frame["open"])
    except (ValueError, TypeError) as exc:
        raise DataError(f"{source}: unparseable price ({exc})") from exc

    duplicated = frame[frame.duplicated(["date", "symbol"], keep=False)]
    if not duplicated.empty:
        first = duplicated.iloc[0]
        raise DataError(
            f"{source}: duplicate row for {first['symbol']} on {first['date'].isoformat()}"
        )
    bad = frame[~(frame["open"] > 0)]
    if not bad.empty:
        first = bad.iloc[0]
        raise DataError(
            f"{source}: non-positive price {first['open']} for {first['symbol']} "
            f"on {first['date'].isoformat()}"
        )

    symbols = tuple(pd.unique(frame["symbol"]))
    grid = frame.pivot(index="symbol", columns="date", values="open")
    grid = grid.reindex(index=list(symbols)).sort_index(axis=1)
    logger.info("Loaded %d symbols x %d dates from %s", len(symbols), grid.shape[1], source)
    return PriceTable(
        symbols=symbols,
        dates=tuple(grid.columns),
        prices=grid.to_numpy(dtype=float),
    )


def read_prices_csv(path: Union[str, Path]) -> PriceTable:
    """Parse and validate a ``date,symbol,open`` CSV."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"Price file not found: {path}")
    try:
        frame = pd.read_csv(path, encoding="utf-8", dtype={"date": str, "symbol": str})
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise DataError(f"{path}: cannot parse CSV ({exc})") from exc
    return _parse_frame(frame, str(path))
