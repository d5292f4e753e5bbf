"""CSV reading and writing for response curves and derived tables.

Curve files carry optional ``# key: value`` metadata comments, then the
header ``angle_deg,voltage_v``, then one sample per row.  Curve values
are written with shortest round-trip float formatting so a write/read
cycle reproduces the curve exactly; derived tables (outlines, sweep
rankings) use 9 significant digits.
"""

from __future__ import annotations

from pathlib import Path

from .design import ReflectorDesign
from .errors import CurveFormatError
from .response import ResponseCurve

CURVE_HEADER = "angle_deg,voltage_v"


def write_curve_csv(curve: ResponseCurve, path) -> None:
    lines = [f"# {k}: {v}" for k, v in curve.metadata.items()]
    lines.append(CURVE_HEADER)
    lines.extend(f"{q!r},{v!r}" for q, v in curve.samples)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_curve_csv(path) -> ResponseCurve:
    """Parse a curve file; errors carry the 1-based offending line number."""
    text = Path(path).read_text(encoding="utf-8")
    metadata: dict[str, str] = {}
    samples: list[tuple[float, float]] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ": " in body:
                key, value = body.split(": ", 1)
                metadata[key.strip()] = value.strip()
            elif body:
                metadata[body] = ""
            continue
        if not header_seen:
            if line != CURVE_HEADER:
                raise CurveFormatError(
                    f"row {lineno}: expected header '{CURVE_HEADER}', got '{line}'"
                )
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise CurveFormatError(f"row {lineno}: expected 2 fields, got {len(fields)}")
        try:
            q, v = float(fields[0]), float(fields[1])
        except ValueError as exc:
            raise CurveFormatError(f"row {lineno}: {exc}") from exc
        if samples and q <= samples[-1][0]:
            raise CurveFormatError(
                f"row {lineno}: angles must be strictly increasing "
                f"({q:g} after {samples[-1][0]:g})"
            )
        samples.append((q, v))
    if not header_seen:
        raise CurveFormatError(f"missing header '{CURVE_HEADER}' in {path}")
    if not samples:
        raise CurveFormatError(f"no samples in {path}")
    return ResponseCurve(tuple(samples), metadata)


def write_points_csv(points, path, header: str = "x_mm,y_mm") -> None:
    lines = [header]
    lines.extend(f"{x:.9g},{y:.9g}" for x, y in points)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_sweep_csv(results: list[tuple[ReflectorDesign, float]], path) -> None:
    lines = ["t_min,t_max,alpha_deg,reflectance,score"]
    lines.extend(
        f"{d.t_min:.9g},{d.t_max:.9g},{d.alpha:.9g},{d.reflectance:.9g},{score:.9g}"
        for d, score in results
    )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
