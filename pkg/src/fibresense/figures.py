"""Matplotlib figure rendering for the CLI report path.

Complements the deterministic SVG output with conventional raster
figures written next to the delimited files.  Not byte-stable across
matplotlib versions; use the SVG output where reproducibility matters.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .design import ReflectorDesign
from .kinematics import ChainShape
from .response import ResponseCurve
from .svgplot import curve_label


def save_curves_png(curves: Sequence[ResponseCurve], path, dpi: int = 150) -> None:
    if not curves:
        raise ValueError("nothing to plot: no curves given")
    fig, ax = plt.subplots(figsize=(7.2, 4.8))
    for i, curve in enumerate(curves):
        ax.plot(curve.angles, curve.voltages, label=curve_label(curve, i))
    ax.set_xlabel("joint angle (deg)")
    ax.set_ylabel("voltage (V)")
    ax.grid(alpha=0.3)
    ax.legend(loc="upper left", fontsize=9)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=dpi)
    plt.close(fig)


def save_points_png(points, path, dpi: int = 150) -> None:
    pts = [(float(x), float(y)) for x, y in points]
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.plot([p[0] for p in pts], [p[1] for p in pts])
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("y (mm)")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=dpi)
    plt.close(fig)


def save_shape_png(shape: ChainShape, path, dpi: int = 150) -> None:
    xs = [p[0] for p in shape.joint_positions]
    ys = [p[1] for p in shape.joint_positions]
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.plot(xs, ys, "-o", mfc="white")
    ax.plot(xs[-1], ys[-1], "o", color="tab:red", markersize=9)
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("y (mm)")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=dpi)
    plt.close(fig)


def save_sweep_png(results: Sequence[tuple[ReflectorDesign, float]], path,
                   top: int = 20, dpi: int = 150) -> None:
    if not results:
        raise ValueError("nothing to plot: no sweep results")
    shown = results[: top]
    labels = [
        f"{d.t_min:g}-{d.t_max:g}mm/{d.alpha:g}deg R={d.reflectance:g}"
        for d, _ in shown
    ]
    scores = [s for _, s in shown]
    fig, ax = plt.subplots(figsize=(7.2, 0.36 * len(shown) + 1.4))
    ax.barh(range(len(shown)), scores, color="tab:blue")
    ax.set_yticks(range(len(shown)), labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("objective score")
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=dpi)
    plt.close(fig)
