"""Renderers for bellrmt sweep outputs: mean-vs-N curves and band plots."""

from .io import (
    EmptyInputError,
    MissingHistogramError,
    SchemaError,
    SweepRow,
    load_asymptotes,
    load_histograms,
    load_sweep_csv,
)
from .plots import FigureSpec, render_fig1, render_fig2

__version__ = "0.1.0"
