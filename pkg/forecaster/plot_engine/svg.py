"""Self-contained SVG line charts (no rendering dependency)."""

from dataclasses import dataclass
from html import escape
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from ..errors import ArgumentError

COLORS = {
    "actual": "#1f77b4",
    "predicted": "#d62728",
}
FALLBACK_COLORS = [
    "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#1f77b4", "#d62728",
]

WIDTH = 1024
HEIGHT = 560
MARGIN_LEFT = 90
MARGIN_RIGHT = 180
MARGIN_TOP = 60
MARGIN_BOTTOM = 70
N_TICKS = 5


@dataclass(frozen=True)
class Line:
    label: str  # legend label; lines sharing a label share colour and one legend entry
    xs: Sequence[float]
    ys: Sequence[float]


def _nice_range(lo: float, hi: float):
    if hi == lo:
        pad = abs(lo) * 0.05 or 1.0
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def render_line_chart(title: str, x_label: str, y_label: str, lines: Sequence[Line]) -> str:
    if not lines:
        raise ArgumentError("no lines to plot")
    xs_all = np.concatenate([np.asarray(l.xs, dtype=np.float64) for l in lines])
    ys_all = np.concatenate([np.asarray(l.ys, dtype=np.float64) for l in lines])
    if xs_all.size == 0:
        raise ArgumentError("no points to plot")

    plot_left, plot_right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    plot_top, plot_bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
    x_lo, x_hi = float(xs_all.min()), float(xs_all.max())
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    y_lo, y_hi = _nice_range(float(ys_all.min()), float(ys_all.max()))

    def px(x: float) -> float:
        return plot_left + (x - x_lo) / (x_hi - x_lo) * (plot_right - plot_left)

    def py(y: float) -> float:
        return plot_bottom - (y - y_lo) / (y_hi - y_lo) * (plot_bottom - plot_top)

    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="32" text-anchor="middle" font-size="20" font-family="Arial">{escape(title)}</text>',
        f'<line x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" y2="{plot_bottom}" stroke="#333333"/>',
        f'<line x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" y2="{plot_bottom}" stroke="#333333"/>',
    ]
    for k in range(N_TICKS + 1):
        xv = x_lo + (x_hi - x_lo) * k / N_TICKS
        yv = y_lo + (y_hi - y_lo) * k / N_TICKS
        out.append(
            f'<text x="{px(xv):.2f}" y="{plot_bottom + 20}" text-anchor="middle" font-size="12" '
            f'font-family="Arial">{xv:.0f}</text>'
        )
        out.append(
            f'<text x="{plot_left - 8}" y="{py(yv) + 4:.2f}" text-anchor="end" font-size="12" '
            f'font-family="Arial">{yv:.4g}</text>'
        )
        out.append(
            f'<line x1="{plot_left}" y1="{py(yv):.2f}" x2="{plot_right}" y2="{py(yv):.2f}" stroke="#eeeeee"/>'
        )
    out.append(
        f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{HEIGHT - 20}" text-anchor="middle" '
        f'font-size="14" font-family="Arial">{escape(x_label)}</text>'
    )
    out.append(
        f'<text x="24" y="{(plot_top + plot_bottom) / 2:.1f}" text-anchor="middle" font-size="14" '
        f'font-family="Arial" transform="rotate(-90 24 {(plot_top + plot_bottom) / 2:.1f})">{escape(y_label)}</text>'
    )

    colors = {}
    for line in lines:
        if line.label not in colors:
            colors[line.label] = COLORS.get(line.label, FALLBACK_COLORS[len(colors) % len(FALLBACK_COLORS)])
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(line.xs, line.ys))
        out.append(
            f'<polyline fill="none" stroke="{colors[line.label]}" stroke-width="1.8" '
            f'data-label="{escape(line.label)}" points="{points}"/>'
        )

    legend_y = plot_top + 10
    for label, color in colors.items():
        out.append(
            f'<line x1="{plot_right + 20}" y1="{legend_y}" x2="{plot_right + 50}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="3"/>'
        )
        out.append(
            f'<text x="{plot_right + 58}" y="{legend_y + 4}" font-size="13" font-family="Arial">{escape(label)}</text>'
        )
        legend_y += 24
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_line_chart_svg(
    output_path: Union[str, Path], title: str, x_label: str, y_label: str, lines: Sequence[Line]
) -> Path:
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_line_chart(title, x_label, y_label, lines), encoding="utf-8")
    return path
