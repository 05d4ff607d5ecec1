"""
Dataset overview charts: the first samples of every raw series, and every series
after min-max scaling on one shared [0, 1] axis.
"""

from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from .. import config as cfg
from ..data_engine import Series
from ..errors import ArgumentError
from .svg import Line, write_line_chart_svg


def series_lines(series: Sequence[Series], limit: int = 0) -> List[Line]:
    """One line per series; limit > 0 keeps only the first `limit` samples."""
    if not series:
        raise ArgumentError("no series to plot")
    if limit < 0:
        raise ArgumentError(f"limit must be >= 0, got {limit}")
    lines = []
    for s in series:
        ys = s.values[:limit] if limit else s.values
        lines.append(Line(s.name, np.arange(ys.size), ys))
    return lines


def plot_dataset(
    raw: Sequence[Series],
    normalized: Sequence[Series],
    out_dir: Union[str, Path],
    limit: int = cfg.PLOT_LIMIT,
) -> Tuple[Path, Path]:
    """Write overview_raw.svg (first `limit` samples) and overview_normalized.svg under out_dir."""
    if limit < 1:
        raise ArgumentError(f"limit must be >= 1, got {limit}")
    if any(s.bounds is None for s in normalized):
        raise ArgumentError("overview of normalized data needs normalized series")
    out_dir = Path(out_dir)
    raw_svg = write_line_chart_svg(
        out_dir / "overview_raw.svg",
        f"raw data, first {min(limit, max(len(s) for s in raw))} samples",
        "sample", "value", series_lines(raw, limit),
    )
    norm_svg = write_line_chart_svg(
        out_dir / "overview_normalized.svg",
        "normalized data", "sample", "scaled value", series_lines(normalized),
    )
    return raw_svg, norm_svg
