"""
Actual vs predicted over the start of the test region, in raw units.
f = 1: one actual and one predicted line. f > 1: the actual line plus one f-step
forecast segment per origin, taken every `stride` origins.
"""

from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
import pandas as pd

from .. import config as cfg
from ..errors import ArgumentError
from ..evaluation_engine import ForecastSet
from .svg import Line, write_line_chart_svg


def plot_lines(
    fs: ForecastSet,
    limit: int = cfg.PLOT_LIMIT,
    stride: int = cfg.PLOT_STRIDE,
) -> Tuple[List[Line], pd.DataFrame]:
    """Lines for the chart and the matching table of plotted values (denormalized)."""
    if limit < 1 or stride < 1:
        raise ArgumentError(f"limit and stride must be >= 1, got {limit}, {stride}")
    raw = fs.denormalized() if fs.bounds is not None else fs
    if raw.size == 0:
        raise ArgumentError(f"nothing to plot for '{fs.series_name}'")
    path = raw.actual_path()
    span = min(limit, path.size)
    first_index = int(raw.origins[0])
    positions = np.arange(span)

    lines = [Line("actual", positions, path[:span])]
    records = [
        {"line": "actual", "origin": -1, "step": 0, "position": int(p),
         "series_index": first_index + int(p), "value": float(v)}
        for p, v in zip(positions, path[:span])
    ]
    if raw.horizon == 1:
        n = min(span, raw.size)
        pred = raw.predicted[:n, 0]
        lines.append(Line("predicted", positions[:n], pred))
        records.extend(
            {"line": "predicted", "origin": int(i), "step": 1, "position": int(i),
             "series_index": first_index + int(i), "value": float(pred[i])}
            for i in range(n)
        )
    else:
        for i in range(0, min(span, raw.size), stride):
            steps = np.arange(raw.horizon)
            keep = i + steps < span
            seg_pos = i + steps[keep]
            seg = raw.predicted[i, keep]
            lines.append(Line("predicted", seg_pos, seg))
            records.extend(
                {"line": "predicted", "origin": int(i), "step": int(k) + 1, "position": int(p),
                 "series_index": first_index + int(p), "value": float(v)}
                for k, p, v in zip(steps[keep], seg_pos, seg)
            )
    return lines, pd.DataFrame.from_records(records)


def plot_forecast(
    fs: ForecastSet,
    model: str,
    horizon: int,
    svg_path: Union[str, Path],
    csv_path: Union[str, Path],
    limit: int = cfg.PLOT_LIMIT,
    stride: int = cfg.PLOT_STRIDE,
) -> Tuple[Path, Path]:
    lines, table = plot_lines(fs, limit, stride)
    span = int(table.loc[table["line"] == "actual", "position"].max()) + 1
    title = f"{fs.series_name}: {model} {horizon}-step ahead forecast, first {span} test points"
    svg = write_line_chart_svg(svg_path, title, "test step", "value", lines)
    csv_path = Path(csv_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(csv_path, index=False, lineterminator="\n")
    return svg, csv_path
