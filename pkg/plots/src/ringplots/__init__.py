"""Figures from spinrings experiment CSVs.

Reads only the public results schema; never touches simulator internals.
"""

from .core import PlotJob, SchemaError, fit_power_law, read_rows, render

__all__ = ["PlotJob", "SchemaError", "fit_power_law", "read_rows", "render"]
__version__ = "0.1.0"
