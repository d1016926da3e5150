"""Figure regeneration for simulation CSV time series."""

from .figures import METRIC_LABELS, REQUIRED_COLUMNS, FigureSpec, SchemaError, read_series, render_figure

__all__ = [
    "FigureSpec",
    "METRIC_LABELS",
    "REQUIRED_COLUMNS",
    "SchemaError",
    "read_series",
    "render_figure",
]
