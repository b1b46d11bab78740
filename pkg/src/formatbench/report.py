"""Grouped-bar comparison chart rendered as a standalone SVG document.

One bar rect per (format, operation); linear seconds axis starting at zero.
No scripts, no external assets, and byte-identical output for equal input,
so rendered charts can be golden-tested.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .results import OPERATIONS, SummaryTable

_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#9c755f",
)

_MARGIN_LEFT = 84
_MARGIN_TOP = 48
_MARGIN_BOTTOM = 56
_PLOT_W = 440
_PLOT_H = 300
_LEGEND_W = 160
_TICK_COUNT = 5  # including zero


def _px(value: float) -> str:
    return f"{value:.3f}"


def _seconds_label(value: float) -> str:
    return f"{value:.4g}"


def render_chart(summary: SummaryTable, title: str) -> str:
    """Render the summary as an SVG grouped bar chart with the given title."""
    if not summary.rows:
        raise ValueError("cannot chart an empty summary")
    series = summary.formats()
    values = {
        (fmt, op): summary.value(fmt, op) for fmt in series for op in OPERATIONS
    }
    y_max = max(values.values())
    if y_max <= 0:
        y_max = 1.0

    width = _MARGIN_LEFT + _PLOT_W + _LEGEND_W
    height = _MARGIN_TOP + _PLOT_H + _MARGIN_BOTTOM
    x_axis_y = _MARGIN_TOP + _PLOT_H

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f'<title>{escape(title)}</title>',
        f'<text x="{_px(_MARGIN_LEFT + _PLOT_W / 2)}" y="24" text-anchor="middle" '
        f'font-size="16">{escape(title)}</text>',
    ]

    # axes
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{_MARGIN_TOP}" x2="{_MARGIN_LEFT}" '
        f'y2="{x_axis_y}" stroke="#333" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{x_axis_y}" x2="{_MARGIN_LEFT + _PLOT_W}" '
        f'y2="{x_axis_y}" stroke="#333" stroke-width="1"/>'
    )

    # y ticks and gridline labels
    for i in range(_TICK_COUNT):
        tick_value = y_max * i / (_TICK_COUNT - 1)
        y = x_axis_y - _PLOT_H * i / (_TICK_COUNT - 1)
        parts.append(
            f'<line x1="{_MARGIN_LEFT - 4}" y1="{_px(y)}" x2="{_MARGIN_LEFT}" '
            f'y2="{_px(y)}" stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{_px(y + 4)}" text-anchor="end" '
            f'font-size="11" class="tick">{_seconds_label(tick_value)}</text>'
        )
    parts.append(
        f'<text x="16" y="{_px(_MARGIN_TOP + _PLOT_H / 2)}" font-size="12" '
        f'text-anchor="middle" transform="rotate(-90 16 {_px(_MARGIN_TOP + _PLOT_H / 2)})">'
        f'seconds per dataset</text>'
    )

    # bars, grouped by operation
    group_w = _PLOT_W / len(OPERATIONS)
    cluster_w = group_w * 0.72
    bar_w = cluster_w / len(series)
    for g, op in enumerate(OPERATIONS):
        group_x = _MARGIN_LEFT + g * group_w
        cluster_x = group_x + (group_w - cluster_w) / 2
        for s, fmt in enumerate(series):
            value = values[(fmt, op)]
            bar_h = _PLOT_H * value / y_max
            x = cluster_x + s * bar_w
            parts.append(
                f'<rect class="bar" x="{_px(x)}" y="{_px(x_axis_y - bar_h)}" '
                f'width="{_px(bar_w)}" height="{_px(bar_h)}" '
                f'fill="{_PALETTE[s % len(_PALETTE)]}"/>'
            )
        parts.append(
            f'<text x="{_px(group_x + group_w / 2)}" y="{x_axis_y + 20}" '
            f'text-anchor="middle" font-size="12">{op}</text>'
        )

    # legend: circle swatches keep rect elements reserved for bars
    legend_x = _MARGIN_LEFT + _PLOT_W + 24
    for s, fmt in enumerate(series):
        y = _MARGIN_TOP + 16 + s * 20
        parts.append(
            f'<circle cx="{legend_x}" cy="{_px(y - 4)}" r="6" '
            f'fill="{_PALETTE[s % len(_PALETTE)]}"/>'
        )
        parts.append(
            f'<text x="{legend_x + 12}" y="{_px(y)}" font-size="12">{escape(fmt)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
