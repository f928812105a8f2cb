"""Figure rendering for vaccination-sweep result CSVs."""

from .render import CsvFormatError, FigureSpec, load_rows, render

__version__ = "0.1.0"

__all__ = ["CsvFormatError", "FigureSpec", "load_rows", "render"]
