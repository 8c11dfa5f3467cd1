"""Minimal standalone SVG line plots (no plotting dependency)."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
WIDTH, HEIGHT = 720, 480
MARGIN = dict(left=80, right=200, top=40, bottom=60)


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def line_plot(series, title: str = "", xlabel: str = "", ylabel: str = "") -> str:
    """Render ``series``, an iterable of (label, xs, ys), as an SVG 1.1 document.

    Each series becomes one polyline; non-finite points are dropped.
    """
    series = [(label, list(xs), list(ys)) for label, xs, ys in series]
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
    if not pts:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(p[0] for p in pts), max(p[0] for p in pts)
    y_lo, y_hi = min(p[1] for p in pts), max(p[1] for p in pts)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5 * abs(y_lo or 1), y_hi + 0.5 * abs(y_hi or 1)
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(x):
        return MARGIN["left"] + (x - x_lo) / (x_hi - x_lo) * pw

    def sy(y):
        return MARGIN["top"] + (1 - (y - y_lo) / (y_hi - y_lo)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{escape(title)}</text>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for x in _ticks(x_lo, x_hi):
        out.append(
            f'<text x="{sx(x):.1f}" y="{MARGIN["top"] + ph + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{x:.4g}</text>'
        )
    for y in _ticks(y_lo, y_hi):
        out.append(
            f'<text x="{MARGIN["left"] - 6}" y="{sy(y) + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{y:.4g}</text>'
        )
    out.append(
        f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="18" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13" transform="rotate(-90 18 {MARGIN["top"] + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    for idx, (label, xs, ys) in enumerate(series):
        color = COLORS[idx % len(COLORS)]
        coords = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)
        )
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        ly = MARGIN["top"] + 16 + 20 * idx
        lx = WIDTH - MARGIN["right"] + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 20}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(
            f'<text x="{lx + 26}" y="{ly}" font-family="sans-serif" font-size="12">{escape(str(label))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
