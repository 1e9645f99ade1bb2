"""
Market data: price ingestion, normalized return panels, correlation
matrices, the amplitude-encoded data state and the classical entropy oracle.
"""

from .prices import (
    PriceSeries,
    PriceTable,
    bundled_prices_path,
    read_prices_csv,
)
from .returns import (
    CorrelationMatrix,
    ReturnPanel,
    build_return_panel,
    correlation_matrix,
    data_statevector,
    log_returns,
    normalize_returns,
    period_label,
    register_sizes,
)
from .spectrum import (
    EntropyReport,
    eigen_symmetric,
    entropy_from_weights,
    svd_entropy_oracle,
)

__all__ = [
    "CorrelationMatrix",
    "EntropyReport",
    "PriceSeries",
    "PriceTable",
    "ReturnPanel",
    "build_return_panel",
    "bundled_prices_path",
    "correlation_matrix",
    "data_statevector",
    "eigen_symmetric",
    "entropy_from_weights",
    "log_returns",
    "normalize_returns",
    "period_label",
    "read_prices_csv",
    "register_sizes",
    "svd_entropy_oracle",
]
