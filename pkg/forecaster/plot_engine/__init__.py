from .dataset_plot import plot_dataset, series_lines
from .forecast_plot import plot_forecast, plot_lines
from .svg import Line, render_line_chart, write_line_chart_svg

__all__ = [
    "Line",
    "plot_dataset",
    "plot_forecast",
    "plot_lines",
    "render_line_chart",
    "series_lines",
    "write_line_chart_svg",
]
