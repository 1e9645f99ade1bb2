"""
Tests for price ingestion, return panels and correlation matrices.
"""

import math
from datetime import date

import numpy as np
import pytest

from qentropy.core.market import (
    PriceSeries,
    build_return_panel,
    correlation_matrix,
    data_statevector,
    log_returns,
    normalize_returns,
    read_prices_csv,
    register_sizes,
)
from qentropy.core.sim import partial_trace_second
from qentropy.utils.errors import (
    ArgumentError,
    DataError,
    DegenerateDataError,
    ShapeError,
)

MONTHS = [date(2020, m, 1) for m in range(1, 7)]


def _series(symbol, prices, months=MONTHS):
    return PriceSeries(symbol, tuple(zip(months, prices)))


class TestPriceSeries:

    def test_dates_must_increase(self):
        with pytest.raises(DataError):
            PriceSeries("X", ((MONTHS[1], 1.0), (MONTHS[0], 2.0)))

    def test_non_positive_price_names_date(self):
        with pytest.raises(DataError, match="2020-02-01"):
            PriceSeries("X", ((MONTHS[0], 1.0), (MONTHS[1], 0.0)))


class TestLogReturns:

    def test_values(self):
        returns = log_returns(_series("X", [100.0, 110.0, 99.0]))
        np.testing.assert_allclose(returns, [math.log(1.1), math.log(0.9)])

    def test_too_short(self):
        with pytest.raises(ArgumentError):
            log_returns(_series("X", [100.0]))


class TestReturnPanel:

    def test_normalized(self):
        series = [_series("A", [1, 2, 3, 2, 5]), _series("B", [3, 1, 2, 4, 4])]
        panel = build_return_panel(series, MONTHS[:5])
        assert panel.a.shape == (2, 4)
        assert np.sum(panel.a ** 2) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(panel.a.mean(axis=1), 0.0, atol=1e-12)
        assert panel.period_labels == ("2020-02", "2020-03", "2020-04", "2020-05")

    def test_constant_prices_degenerate(self):
        series = [_series("A", [1, 2, 3, 2, 5]), _series("FLAT", [4, 4, 4, 4, 4])]
        with pytest.raises(DegenerateDataError) as info:
            build_return_panel(series, MONTHS[:5])
        assert info.value.symbol == "FLAT"

    def test_constant_growth_degenerate(self):
        raw = np.array([[0.1, 0.1, 0.1, 0.1], [0.2, -0.1, 0.3, 0.0]])
        with pytest.raises(DegenerateDataError):
            normalize_returns(raw, ("G", "H"))

    def test_missing_date(self):
        series = [_series("A", [1, 2, 3, 2, 5]), _series("B", [3, 1, 2], MONTHS[:3])]
        with pytest.raises(DataError, match="2020-04-01"):
            build_return_panel(series, MONTHS[:5])

    def test_price_scale_invariant(self, rng):
        prices = {"A": [1, 2, 3, 2, 5], "B": [3, 1, 2, 4, 4]}
        panel = build_return_panel([_series(s, p) for s, p in prices.items()], MONTHS[:5])
        for _ in range(20):
            factors = rng.uniform(0.01, 100.0, size=2)
            scaled = [_series(s, [k * x for x in p]) for k, (s, p) in zip(factors, prices.items())]
            np.testing.assert_allclose(build_return_panel(scaled, MONTHS[:5]).a, panel.a, atol=1e-12)

    def test_register_sizes_reject_non_power_of_two(self):
        series = [_series(s, p) for s, p in
                  (("A", [1, 2, 3, 2]), ("B", [3, 1, 2, 4]), ("C", [2, 5, 3, 4]))]
        panel = build_return_panel(series, MONTHS[:4])
        with pytest.raises(ShapeError):
            register_sizes(panel)


class TestBundledData:

    def test_shape(self, price_table):
        assert price_table.symbols == ("XOM", "WMT", "PG", "MSFT")
        assert price_table.n_months == 12
        assert price_table.dates[0] == date(2008, 4, 1)

    def test_trace_normalized_on_every_window(self, window_correlations):
        assert len(window_correlations) == 8
        for corr in window_correlations:
            assert corr.trace == pytest.approx(1.0, abs=1e-10)
            assert np.min(np.linalg.eigvalsh(corr.c)) >= -1e-9

    def test_reduced_state_equals_correlation(self, window_panels):
        for panel in window_panels:
            state = data_statevector(panel)
            assert state.n_qubits == 4
            rho = partial_trace_second(state, 2)
            np.testing.assert_allclose(rho.entries.real, correlation_matrix(panel).c, atol=1e-12)

    @pytest.mark.parametrize("order", [[1, 0, 2, 3], [2, 0, 3, 1], [3, 2, 1, 0]])
    def test_asset_permutation_equivariant(self, price_table, windows, order):
        for window in windows:
            sub_table = price_table.window(window)
            series = sub_table.all_series()
            panel = build_return_panel(series, sub_table.dates)
            permuted = build_return_panel([series[i] for i in order], sub_table.dates)
            assert permuted.symbols == tuple(panel.symbols[i] for i in order)
            np.testing.assert_allclose(permuted.a, panel.a[order], atol=1e-12)
            c = correlation_matrix(panel).c
            np.testing.assert_allclose(correlation_matrix(permuted).c, c[np.ix_(order, order)],
                                       atol=1e-12)

    def test_window_subtable(self, price_table, windows):
        sub_table = price_table.window(windows[0])
        assert sub_table.n_months == 5
        assert sub_table.series("MSFT").prices[0] == pytest.approx(28.83)


class TestReadPricesCsv:

    def _write(self, tmp_path, text):
        path = tmp_path / "prices.csv"
        path.write_text(text, encoding="utf-8")
        return path

    def test_grid_layout(self, tmp_path):
        path = self._write(tmp_path, "date,symbol,open\n2020-01-01,A,1.5\n2020-02-01,A,2.5\n"
                                     "2020-01-01,B,3.0\n")
        table = read_prices_csv(path)
        assert table.symbols == ("A", "B")
        assert table.dates == (date(2020, 1, 1), date(2020, 2, 1))
        np.testing.assert_array_equal(table.prices[0], [1.5, 2.5])
        assert np.isnan(table.prices[1, 1])
        assert table.series("B").dates == [date(2020, 1, 1)]

    def test_missing_column(self, tmp_path):
        path = self._write(tmp_path, "date,symbol\n2020-01-01,A\n")
        with pytest.raises(DataError, match="open"):
            read_prices_csv(path)

    def test_duplicate_row(self, tmp_path):
        path = self._write(tmp_path, "date,symbol,open\n2020-01-01,A,1\n2020-01-01,A,2\n")
        with pytest.raises(DataError, match="duplicate"):
            read_prices_csv(path)

    def test_negative_price(self, tmp_path):
        path = self._write(tmp_path, "date,symbol,open\n2020-01-01,A,1\n2020-02-01,A,-2\n")
        with pytest.raises(DataError, match="2020-02-01"):
            read_prices_csv(path)

    def test_bad_date(self, tmp_path):
        path = self._write(tmp_path, "date,symbol,open\nJanuary,A,1\n")
        with pytest.raises(DataError):
            read_prices_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_prices_csv(tmp_path / "absent.csv")
