from .render import CurveFile, RenderError, Style, ordered_series, parse_curve_file, render

__version__ = "0.1.0"
