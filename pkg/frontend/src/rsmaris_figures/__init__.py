"""Line-plot renderer for sum-rate sweep CSVs."""

from .figures import (
    FIGURE_IDS,
    FigureSpec,
    NoDataError,
    SchemaError,
    build_series,
    load_table,
    render,
)

__version__ = "0.1.0"
