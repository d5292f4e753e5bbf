"""Deterministic SVG rendering of curves, outlines, and chain shapes.

Output is byte-identical for identical inputs: no timestamps, no random
ids, a fixed palette, and fixed float formatting.  This keeps plots
diff-able in tests and reproducible across platforms, which raster
backends do not guarantee.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

from .kinematics import ChainShape
from .response import ResponseCurve

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 20, 48

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    span = hi - lo
    raw = span / target
    power = math.floor(math.log10(raw))
    step = 10.0 ** power
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mult * 10.0 ** power >= raw:
            step = mult * 10.0 ** power
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks


def _pad_range(lo: float, hi: float, frac: float = 0.04) -> tuple[float, float]:
    if hi <= lo:
        return lo - 0.5, hi + 0.5
    pad = (hi - lo) * frac
    return lo - pad, hi + pad


class _Frame:
    """Linear data-to-pixel mapping inside the plot margins."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo, y_hi
        self.plot_w = WIDTH - MARGIN_L - MARGIN_R
        self.plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def x(self, x: float) -> float:
        return MARGIN_L + (x - self.x_lo) / (self.x_hi - self.x_lo) * self.plot_w

    def y(self, y: float) -> float:
        return MARGIN_T + (self.y_hi - y) / (self.y_hi - self.y_lo) * self.plot_h


def _equalise_aspect(x_lo, x_hi, y_lo, y_hi):
    """Widen the narrower axis so both use the same mm-per-pixel scale."""
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B
    x_span = x_hi - x_lo
    y_span = y_hi - y_lo
    if x_span / plot_w >= y_span / plot_h:
        need = x_span / plot_w * plot_h
        mid = (y_lo + y_hi) / 2.0
        y_lo, y_hi = mid - need / 2.0, mid + need / 2.0
    else:
        need = y_span / plot_h * plot_w
        mid = (x_lo + x_hi) / 2.0
        x_lo, x_hi = mid - need / 2.0, mid + need / 2.0
    return x_lo, x_hi, y_lo, y_hi


def _axes_svg(frame: _Frame, x_label: str, y_label: str) -> list[str]:
    parts = [
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{frame.plot_w}" '
        f'height="{frame.plot_h}" fill="none" stroke="#333333" stroke-width="1"/>'
    ]
    y_px0 = MARGIN_T + frame.plot_h
    for t in _nice_ticks(frame.x_lo, frame.x_hi):
        px = frame.x(t)
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{y_px0}" x2="{_fmt(px)}" y2="{y_px0 + 5}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{y_px0 + 18}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle" fill="#333333">{t:.6g}</text>'
        )
    for t in _nice_ticks(frame.y_lo, frame.y_hi):
        py = frame.y(t)
        parts.append(
            f'<line x1="{MARGIN_L - 5}" y1="{_fmt(py)}" x2="{MARGIN_L}" y2="{_fmt(py)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{_fmt(py + 4)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end" fill="#333333">{t:.6g}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_L + frame.plot_w / 2:.9g}" y="{HEIGHT - 10}" '
        f'font-family="sans-serif" font-size="13" text-anchor="middle" '
        f'fill="#333333">{x_label}</text>'
    )
    y_mid = MARGIN_T + frame.plot_h / 2
    parts.append(
        f'<text x="16" y="{_fmt(y_mid)}" font-family="sans-serif" font-size="13" '
        f'text-anchor="middle" fill="#333333" '
        f'transform="rotate(-90 16 {_fmt(y_mid)})">{y_label}</text>'
    )
    return parts


def _document(body: list[str]) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _polyline(frame: _Frame, xs, ys, color: str, width: float = 1.5) -> str:
    pts = " ".join(f"{_fmt(frame.x(x))},{_fmt(frame.y(y))}" for x, y in zip(xs, ys))
    return (f'<polyline fill="none" stroke="{color}" '
            f'stroke-width="{width:g}" points="{pts}"/>')


def curve_label(curve: ResponseCurve, index: int) -> str:
    return curve.metadata.get("label") or curve.metadata.get("surface") or f"curve {index + 1}"


def curves_svg(curves: Sequence[ResponseCurve]) -> str:
    """Voltage-vs-angle plot, one polyline per curve, legend in input order."""
    if not curves:
        raise ValueError("nothing to plot: no curves given")
    x_lo = min(c.angles[0] for c in curves)
    x_hi = max(c.angles[-1] for c in curves)
    y_lo = min(float(c.voltages.min()) for c in curves)
    y_hi = max(float(c.voltages.max()) for c in curves)
    x_lo, x_hi = _pad_range(x_lo, x_hi)
    y_lo, y_hi = _pad_range(y_lo, y_hi)
    frame = _Frame(x_lo, x_hi, y_lo, y_hi)

    body = _axes_svg(frame, "joint angle (deg)", "voltage (V)")
    for i, curve in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        body.append(_polyline(frame, curve.angles, curve.voltages, color))
    # legend, top-left inside the axes
    for i, curve in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        y = MARGIN_T + 16 + 16 * i
        body.append(
            f'<line x1="{MARGIN_L + 10}" y1="{y}" x2="{MARGIN_L + 32}" y2="{y}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        body.append(
            f'<text x="{MARGIN_L + 38}" y="{y + 4}" font-family="sans-serif" '
            f'font-size="11" fill="#333333">{curve_label(curve, i)}</text>'
        )
    return _document(body)


def emit_plot(curves: Sequence[ResponseCurve], path) -> str:
    """Write the curves plot to ``path`` and return the SVG text."""
    doc = curves_svg(curves)
    Path(path).write_text(doc, encoding="utf-8")
    return doc


def points_svg(points, x_label: str = "x (mm)", y_label: str = "y (mm)") -> str:
    """Equal-aspect polyline plot of an (n, 2) point sequence."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise ValueError("nothing to plot: need at least 2 points")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = _pad_range(min(xs), max(xs))
    y_lo, y_hi = _pad_range(min(ys), max(ys))
    x_lo, x_hi, y_lo, y_hi = _equalise_aspect(x_lo, x_hi, y_lo, y_hi)
    frame = _Frame(x_lo, x_hi, y_lo, y_hi)
    body = _axes_svg(frame, x_label, y_label)
    body.append(_polyline(frame, xs, ys, PALETTE[0]))
    return _document(body)


def shape_svg(shape: ChainShape) -> str:
    """Equal-aspect backbone polyline with joint dots and a tip marker."""
    pts = list(shape.joint_positions)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = _pad_range(min(xs), max(xs), 0.08)
    y_lo, y_hi = _pad_range(min(ys), max(ys), 0.08)
    x_lo, x_hi, y_lo, y_hi = _equalise_aspect(x_lo, x_hi, y_lo, y_hi)
    frame = _Frame(x_lo, x_hi, y_lo, y_hi)
    body = _axes_svg(frame, "x (mm)", "y (mm)")
    body.append(_polyline(frame, xs, ys, PALETTE[0], width=2.0))
    for x, y in pts[:-1]:
        body.append(
            f'<circle cx="{_fmt(frame.x(x))}" cy="{_fmt(frame.y(y))}" r="3" '
            f'fill="#ffffff" stroke="{PALETTE[0]}" stroke-width="1.5"/>'
        )
    tip_x, tip_y = pts[-1]
    body.append(
        f'<circle cx="{_fmt(frame.x(tip_x))}" cy="{_fmt(frame.y(tip_y))}" r="5" '
        f'fill="{PALETTE[1]}"/>'
    )
    return _document(body)
