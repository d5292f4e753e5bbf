"""Curvature-varying reflector geometry and fibre mounting.

The reflector is a disc segment whose thickness grows with the profile
angle beta over an angular span alpha.  With the fibre tip fixed at a
standoff from the reflector's base surface, rotating the joint slides a
thicker (or thinner) part of the reflector in front of the fibre, so the
fibre-to-surface gap h varies continuously with joint angle.

Lengths are millimetres and angles are degrees throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MountingError, SpanError


@dataclass(frozen=True)
class SurfaceFinish:
    """A reflecting surface and the fraction of incident flux it returns."""

    label: str
    reflectance: float

    def __post_init__(self):
        if not 0.0 <= self.reflectance <= 1.0:
            raise ValueError(f"reflectance must be in [0, 1], got {self.reflectance}")


# Finishes ordered by reflectance: polished tape down to bare printed resin.
SILVER_TAPE = SurfaceFinish("silver-tape", 0.95)
WHITE_TAPE = SurfaceFinish("white-tape", 0.80)
WHITE_RESIN = SurfaceFinish("white-resin", 0.60)


@dataclass(frozen=True)
class ReflectorProfile:
    """Thickness-vs-angle profile of a curved reflector.

    ``table`` is None for a linear ramp from t_min to t_max over
    [0, alpha].  Otherwise it holds ordered (beta_deg, thickness_mm)
    breakpoints, interpolated piecewise-linearly; the table must start
    at (0, t_min), end at (alpha, t_max), and stay within
    [t_min, t_max].
    """

    t_min: float
    t_max: float
    alpha: float
    surface: SurfaceFinish
    table: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if not 0.0 < self.t_min <= self.t_max:
            raise ValueError(
                f"need 0 < t_min <= t_max, got t_min={self.t_min}, t_max={self.t_max}"
            )
        if not 0.0 < self.alpha <= 360.0:
            raise ValueError(f"alpha must be in (0, 360] deg, got {self.alpha}")
        if self.table is not None:
            pts = tuple((float(b), float(t)) for b, t in self.table)
            object.__setattr__(self, "table", pts)
            if len(pts) < 2:
                raise ValueError("thickness table needs at least 2 points")
            betas = [b for b, _ in pts]
            thicks = [t for _, t in pts]
            if any(b1 >= b2 for b1, b2 in zip(betas, betas[1:])):
                raise ValueError("table angles must be strictly increasing")
            if betas[0] != 0.0 or betas[-1] != self.alpha:
                raise ValueError(f"table must cover [0, {self.alpha}] deg exactly")
            if thicks[0] != self.t_min or thicks[-1] != self.t_max:
                raise ValueError("table must start at t_min and end at t_max")
            if any(t < self.t_min or t > self.t_max for t in thicks):
                raise ValueError("table thickness values must stay within [t_min, t_max]")

    @classmethod
    def linear(cls, t_min: float, t_max: float, alpha: float,
               surface: SurfaceFinish = SILVER_TAPE) -> "ReflectorProfile":
        return cls(float(t_min), float(t_max), float(alpha), surface)

    @classmethod
    def from_table(cls, points, surface: SurfaceFinish = SILVER_TAPE) -> "ReflectorProfile":
        """Build a sampled profile; t_min, t_max, alpha come from the table."""
        pts = tuple((float(b), float(t)) for b, t in points)
        if len(pts) < 2:
            raise ValueError("thickness table needs at least 2 points")
        return cls(pts[0][1], pts[-1][1], pts[-1][0], surface, table=pts)

    def describe(self) -> str:
        if self.table is None:
            return f"linear {self.t_min:g}-{self.t_max:g} mm over {self.alpha:g} deg"
        return f"table[{len(self.table)}] {self.t_min:g}-{self.t_max:g} mm over {self.alpha:g} deg"


@dataclass(frozen=True)
class MountingConfig:
    """Where the fibre sits relative to the reflector.

    standoff is the distance from the fibre tip to the reflector's
    zero-thickness base surface; beta_offset is the profile angle the
    fibre faces at joint angle zero; base_radius only affects outline
    export.
    """

    standoff: float
    beta_offset: float = 0.0
    base_radius: float = 10.0

    def __post_init__(self):
        if self.standoff <= 0.0:
            raise ValueError(f"standoff must be positive, got {self.standoff}")
        if self.beta_offset < 0.0:
            raise ValueError(f"beta_offset must be >= 0, got {self.beta_offset}")
        if self.base_radius <= 0.0:
            raise ValueError(f"base_radius must be positive, got {self.base_radius}")

    @classmethod
    def default_for(cls, profile: ReflectorProfile, clearance: float = 1.0,
                    beta_offset: float = 0.0, base_radius: float = 10.0) -> "MountingConfig":
        """Standoff t_max + clearance, keeping the gap within [clearance, clearance + t span]."""
        return cls(profile.t_max + clearance, beta_offset, base_radius)


def thickness_at(profile: ReflectorProfile, beta):
    """Reflector thickness (mm) at profile angle beta (deg).

    Accepts a scalar or an array; raises SpanError outside [0, alpha].
    """
    b = np.asarray(beta, dtype=float)
    bad = (b < 0.0) | (b > profile.alpha)
    if np.any(bad):
        offender = float(np.atleast_1d(b)[np.argmax(np.atleast_1d(bad))])
        raise SpanError(
            f"profile angle {offender:g} deg outside the profile span [0, {profile.alpha:g}] deg"
        )
    if profile.table is None:
        t = profile.t_min + (profile.t_max - profile.t_min) * b / profile.alpha
    else:
        betas = np.array([p[0] for p in profile.table])
        thicks = np.array([p[1] for p in profile.table])
        t = np.interp(b, betas, thicks)
    return float(t) if np.ndim(beta) == 0 else t


def gap_at(profile: ReflectorProfile, mount: MountingConfig, q):
    """Fibre-to-surface gap h (mm) at joint angle q (deg).

    h = standoff - thickness(beta_offset + q).  The standoff must exceed
    t_max so h stays positive over the whole span.
    """
    if mount.standoff <= profile.t_max:
        raise MountingError(
            f"standoff {mount.standoff:g} mm must exceed the profile's "
            f"t_max {profile.t_max:g} mm to keep the gap positive"
        )
    if mount.beta_offset >= profile.alpha:
        raise MountingError(
            f"beta_offset {mount.beta_offset:g} deg must be below the "
            f"profile span {profile.alpha:g} deg"
        )
    qa = np.asarray(q, dtype=float)
    beta = mount.beta_offset + qa
    bad = (beta < 0.0) | (beta > profile.alpha)
    if np.any(bad):
        offender = float(np.atleast_1d(qa)[np.argmax(np.atleast_1d(bad))])
        lo = -mount.beta_offset
        hi = profile.alpha - mount.beta_offset
        raise SpanError(
            f"joint angle {offender:g} deg outside the mounted span [{lo:g}, {hi:g}] deg"
        )
    h = mount.standoff - thickness_at(profile, beta)
    return float(h) if np.ndim(q) == 0 else h


def outline_points(profile: ReflectorProfile, mount: MountingConfig,
                   n_samples: int) -> np.ndarray:
    """Cross-section outer edge of the reflector as (n_samples, 2) xy points.

    The outer edge sits at radius base_radius + thickness(beta) for beta
    evenly sampled over [0, alpha]; useful for fabrication preview and
    plotting.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    beta = np.linspace(0.0, profile.alpha, int(n_samples))
    r = mount.base_radius + thickness_at(profile, beta)
    rad = np.radians(beta)
    return np.column_stack((r * np.cos(rad), r * np.sin(rad)))
