"""Render figures from covariance-experiment CSV logs.

The package consumes only the documented result-CSV schema; all numbers are
computed upstream. Two operations: error-vs-n rate panels (raw + rescaled)
and a method-comparison panel with trial bands.
"""

from .data import (
    SCHEMA_COLUMNS,
    EmptyDataError,
    PlotsError,
    SchemaError,
    read_rows,
    series_means,
)
from .figures import fitted_slopes, plot_compare, plot_rates

__version__ = "0.1.0"

__all__ = [
    "SCHEMA_COLUMNS",
    "EmptyDataError",
    "PlotsError",
    "SchemaError",
    "fitted_slopes",
    "plot_compare",
    "plot_rates",
    "read_rows",
    "series_means",
    "__version__",
]
