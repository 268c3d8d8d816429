"""Static figures from the walk engine's CSV outputs."""

from .csvio import SchemaError, Table, read_table
from .figures import (
    plot_distribution_overlay,
    plot_ensemble_distribution,
    plot_sigma_loglog,
    plot_surface,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SchemaError",
    "Table",
    "read_table",
    "plot_distribution_overlay",
    "plot_sigma_loglog",
    "plot_surface",
    "plot_ensemble_distribution",
]
