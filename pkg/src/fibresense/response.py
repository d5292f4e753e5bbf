"""Forward simulation of voltage-vs-joint-angle response curves.

Reproduces a motorised bench sweep in software: for each joint angle the
mounted reflector geometry fixes the fibre gap, the coupling model turns
the gap into a voltage, and an optional noise model adds detector noise
and ADC quantisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .geometry import MountingConfig, ReflectorProfile, SurfaceFinish, gap_at
from .optics import FiberSpec, theoretical_voltage

# 10-bit ADC over a 5 V rail.
ADC_STEP_10BIT_5V = 5.0 / 1023.0


@dataclass(frozen=True)
class NoiseModel:
    """Additive zero-mean Gaussian voltage noise plus ADC quantisation.

    Randomness comes from numpy's default PCG64 generator seeded with
    ``seed``, so a given model reproduces the same noise stream on any
    platform.  sigma_v = 0 and adc_step = 0 make the model a no-op.
    """

    sigma_v: float = 0.02
    adc_step: float = ADC_STEP_10BIT_5V
    seed: int = 0

    def __post_init__(self):
        if self.sigma_v < 0.0:
            raise ValueError(f"sigma_v must be >= 0, got {self.sigma_v}")
        if self.adc_step < 0.0:
            raise ValueError(f"adc_step must be >= 0, got {self.adc_step}")


@dataclass(frozen=True)
class ResponseCurve:
    """Ordered (joint angle deg, voltage V) samples plus free-form metadata."""

    samples: tuple[tuple[float, float], ...]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        pts = tuple((float(q), float(v)) for q, v in self.samples)
        object.__setattr__(self, "samples", pts)
        if not pts:
            raise ValueError("curve must contain at least one sample")
        qs = [q for q, _ in pts]
        if any(q1 >= q2 for q1, q2 in zip(qs, qs[1:])):
            raise ValueError("curve angles must be strictly increasing")

    @classmethod
    def from_arrays(cls, angles, voltages, metadata: dict[str, str] | None = None) -> "ResponseCurve":
        angles = np.asarray(angles, dtype=float)
        voltages = np.asarray(voltages, dtype=float)
        if angles.shape != voltages.shape:
            raise ValueError("angles and voltages must have the same length")
        samples = tuple(zip((float(q) for q in angles), (float(v) for v in voltages)))
        return cls(samples, dict(metadata or {}))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def angles(self) -> np.ndarray:
        return np.array([q for q, _ in self.samples])

    @property
    def voltages(self) -> np.ndarray:
        return np.array([v for _, v in self.samples])

    def window(self, q_lo: float, q_hi: float) -> "ResponseCurve":
        """Sub-curve with q_lo <= angle <= q_hi (endpoints included)."""
        kept = tuple(s for s in self.samples if q_lo <= s[0] <= q_hi)
        if not kept:
            raise ValueError(f"no samples in window [{q_lo:g}, {q_hi:g}] deg")
        return ResponseCurve(kept, dict(self.metadata))


def angle_grid(start: float, stop: float, step: float = 1.0) -> np.ndarray:
    """Evenly spaced angles from start to stop inclusive (when aligned)."""
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"stop {stop:g} must be >= start {start:g}")
    n = int(np.floor((stop - start) / step + 1e-9))
    grid = start + step * np.arange(n + 1)
    # land exactly on stop when the span divides evenly
    if abs(grid[-1] - stop) < 1e-9 * max(1.0, step):
        grid[-1] = stop
    return grid


def simulate_response(fiber: FiberSpec, profile: ReflectorProfile, mount: MountingConfig,
                      angles: Sequence[float] | np.ndarray,
                      noise: NoiseModel | None = None) -> ResponseCurve:
    """Simulate the voltage read at each joint angle of a sweep.

    Angles must be strictly increasing and lie within the mounted span.
    With a noise model, Gaussian noise is added to the physical voltage,
    the result is rounded to the nearest ADC step, then clamped to
    [0, v_max]; a fixed seed gives bit-identical curves on every run.
    """
    q = np.asarray(angles, dtype=float)
    if q.ndim != 1 or q.size == 0:
        raise ValueError("angles must be a non-empty 1-D sequence")
    if np.any(np.diff(q) <= 0.0):
        raise ValueError("angles must be strictly increasing")

    h = gap_at(profile, mount, q)
    v = theoretical_voltage(fiber, h, profile.surface)

    metadata = {
        "source": "simulated",
        "profile": profile.describe(),
        "surface": profile.surface.label,
        "label": f"{profile.surface.label} {profile.describe()}",
    }
    if noise is not None:
        rng = np.random.default_rng(noise.seed)
        if noise.sigma_v > 0.0:
            v = v + rng.normal(0.0, noise.sigma_v, size=v.shape)
        if noise.adc_step > 0.0:
            v = np.round(v / noise.adc_step) * noise.adc_step
        v = np.clip(v, 0.0, fiber.v_max)
        metadata["seed"] = str(noise.seed)
    return ResponseCurve.from_arrays(q, v, metadata)


def sweep_surfaces(fiber: FiberSpec, profile: ReflectorProfile, mount: MountingConfig,
                   angles: Sequence[float] | np.ndarray,
                   surfaces: Iterable[SurfaceFinish]) -> list[ResponseCurve]:
    """One noise-free curve per surface finish on identical geometry.

    Output order matches the input surface order.
    """
    surfaces = list(surfaces)
    if not surfaces:
        raise ValueError("surfaces must not be empty")
    return [
        simulate_response(fiber, replace(profile, surface=s), mount, angles)
        for s in surfaces
    ]
