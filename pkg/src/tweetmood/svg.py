"""Minimal deterministic SVG line and bar charts.

Hand-rolled emitter so report outputs are byte-stable across reruns
(no timestamps, ids, or library version strings). Good enough for
desk-scale renderings of the report tables; not a plotting library.
"""
from __future__ import annotations

from typing import Sequence

MARGIN_LEFT = 64
MARGIN_RIGHT = 16
MARGIN_TOP = 34
MARGIN_BOTTOM = 56


def _esc(text: str) -> str:
    return (
        str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _y_scale(values: Sequence[float], lo: float | None, hi: float | None):
    vmin = min(values) if lo is None else lo
    vmax = max(values) if hi is None else hi
    if vmin > 0 and lo is None:
        vmin = 0.0
    if vmax < 0 and hi is None:
        vmax = 0.0
    if vmax == vmin:
        vmax = vmin + 1.0
    return vmin, vmax


def _frame(width: int, height: int, title: str, body: list[str]) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">'
        f"{_esc(title)}</text>",
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def line_chart(
    points: Sequence[tuple[str, float]],
    title: str = "",
    width: int = 840,
    height: int = 360,
    y_min: float | None = None,
    y_max: float | None = None,
) -> str:
    """Polyline chart of (label, value) points in the given order."""
    if not points:
        return _frame(width, height, title, ['<text x="20" y="40">no data</text>'])
    values = [v for _, v in points]
    vmin, vmax = _y_scale(values, y_min, y_max)
    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM

    def x_at(i: int) -> float:
        if len(points) == 1:
            return MARGIN_LEFT + plot_w / 2
        return MARGIN_LEFT + plot_w * i / (len(points) - 1)

    def y_at(v: float) -> float:
        return MARGIN_TOP + plot_h * (1 - (v - vmin) / (vmax - vmin))

    body = [
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{MARGIN_TOP + plot_h}" stroke="black"/>',
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP + plot_h}" '
        f'x2="{MARGIN_LEFT + plot_w}" y2="{MARGIN_TOP + plot_h}" stroke="black"/>',
    ]
    if vmin < 0 < vmax:
        zero = y_at(0.0)
        body.append(
            f'<line x1="{MARGIN_LEFT}" y1="{_fmt(zero)}" x2="{MARGIN_LEFT + plot_w}" '
            f'y2="{_fmt(zero)}" stroke="#bbbbbb" stroke-dasharray="4 3"/>'
        )
    for frac in (0.0, 0.5, 1.0):
        v = vmin + (vmax - vmin) * frac
        body.append(
            f'<text x="{MARGIN_LEFT - 6}" y="{_fmt(y_at(v) + 4)}" '
            f'text-anchor="end">{v:.2f}</text>'
        )
    coords = " ".join(
        f"{_fmt(x_at(i))},{_fmt(y_at(v))}" for i, (_, v) in enumerate(points)
    )
    body.append(
        f'<polyline points="{coords}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
    )
    # Thin x labels to at most ~8 so long date ranges stay readable.
    step = max(1, (len(points) + 7) // 8)
    for i, (label, _) in enumerate(points):
        if i % step and i != len(points) - 1:
            continue
        body.append(
            f'<text x="{_fmt(x_at(i))}" y="{MARGIN_TOP + plot_h + 16}" '
            f'text-anchor="middle" font-size="9">{_esc(label)}</text>'
        )
    return _frame(width, height, title, body)


def bar_chart(
    items: Sequence[tuple[str, float]],
    title: str = "",
    width: int = 840,
    height: int = 360,
) -> str:
    """Vertical bar chart of (label, value) items in the given order."""
    if not items:
        return _frame(width, height, title, ['<text x="20" y="40">no data</text>'])
    values = [v for _, v in items]
    vmin, vmax = _y_scale(values, None, None)
    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM
    slot = plot_w / len(items)
    bar_w = slot * 0.7

    def y_at(v: float) -> float:
        return MARGIN_TOP + plot_h * (1 - (v - vmin) / (vmax - vmin))

    baseline = y_at(max(vmin, min(0.0, vmax)) if vmin < 0 else vmin)
    body = [
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{MARGIN_TOP + plot_h}" stroke="black"/>',
        f'<line x1="{MARGIN_LEFT}" y1="{_fmt(baseline)}" '
        f'x2="{MARGIN_LEFT + plot_w}" y2="{_fmt(baseline)}" stroke="black"/>',
    ]
    for frac in (0.0, 0.5, 1.0):
        v = vmin + (vmax - vmin) * frac
        body.append(
            f'<text x="{MARGIN_LEFT - 6}" y="{_fmt(y_at(v) + 4)}" '
            f'text-anchor="end">{v:.2f}</text>'
        )
    for i, (label, v) in enumerate(items):
        x = MARGIN_LEFT + slot * i + (slot - bar_w) / 2
        top = y_at(max(v, 0.0) if vmin < 0 else v)
        h = abs(y_at(v) - baseline)
        color = "#1f77b4" if v >= 0 else "#d62728"
        body.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(min(top, baseline))}" '
            f'width="{_fmt(bar_w)}" height="{_fmt(h)}" fill="{color}"/>'
        )
        body.append(
            f'<text x="{_fmt(x + bar_w / 2)}" y="{MARGIN_TOP + plot_h + 16}" '
            f'text-anchor="middle" font-size="9">{_esc(label)}</text>'
        )
    return _frame(width, height, title, body)
