"""Batch figure rendering for infodyn CSV sweep output."""

from .csvio import SchemaMismatchError, Table, read_table, validate_schema
from .render import FigureJob, build_figure, render

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "FigureJob",
    "render",
    "build_figure",
    "Table",
    "read_table",
    "validate_schema",
    "SchemaMismatchError",
]
