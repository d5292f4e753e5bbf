"""Reflector design-space exploration against quantitative objectives.

A design is the 4-tuple (t_min, t_max, alpha, reflectance) of a linear
thickness ramp plus its surface.  Objectives score a noise-free
simulated curve, oriented so larger is always better: voltage swing over
a window, usable-range length, or negated deviation from the best-fit
line.  The search is an exhaustive grid sweep optionally refined by a
derivative-free coordinate pattern search; the objective is cheap and at
most 4-dimensional, so nothing fancier is warranted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Callable, Sequence, Union

import numpy as np

from .calibration import usable_range
from .errors import BudgetError, EmptyRangeError, SpanError
from .geometry import MountingConfig, ReflectorProfile, SurfaceFinish
from .optics import FiberSpec, full_scale_k_v
from .response import ResponseCurve, angle_grid, simulate_response

DEFAULT_CELL_BUDGET = 10 ** 6

# axis = (low, high, grid count)
Axis = tuple[float, float, int]


@dataclass(frozen=True)
class ReflectorDesign:
    """Grid point of the design space: a linear ramp plus reflectance."""

    t_min: float
    t_max: float
    alpha: float
    reflectance: float

    def to_profile(self, label: str = "design") -> ReflectorProfile:
        return ReflectorProfile.linear(
            self.t_min, self.t_max, self.alpha,
            SurfaceFinish(label, self.reflectance),
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.t_min, self.t_max, self.alpha, self.reflectance)


@dataclass(frozen=True)
class DesignSpace:
    """Axis ranges, grid counts, and the fixed evaluation context.

    Mounting follows the default policy standoff = t_max + clearance, so
    every design is evaluated at the same closest-approach gap.  Each
    design's curve is simulated noise-free over its own span [0, alpha]
    at angle_step degrees.
    """

    t_min: Axis = (1.0, 2.0, 2)
    t_max: Axis = (2.0, 5.0, 4)
    alpha: Axis = (120.0, 180.0, 3)
    reflectance: Axis = (0.6, 0.95, 3)
    fiber: FiberSpec = FiberSpec()
    clearance: float = 1.0
    angle_step: float = 1.0

    def __post_init__(self):
        for name in ("t_min", "t_max", "alpha", "reflectance"):
            lo, hi, n = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} axis range is inverted: ({lo}, {hi})")
            if n < 1 or int(n) != n:
                raise ValueError(f"{name} axis needs an integer grid count >= 1")
        if self.t_min[1] > self.t_max[0]:
            raise ValueError("t_min range must lie entirely below the t_max range")
        if self.clearance <= 0.0:
            raise ValueError(f"clearance must be positive, got {self.clearance}")
        if self.angle_step <= 0.0:
            raise ValueError(f"angle_step must be positive, got {self.angle_step}")

    def axis_values(self, name: str) -> np.ndarray:
        lo, hi, n = getattr(self, name)
        return np.linspace(lo, hi, int(n))

    def size(self) -> int:
        return int(np.prod([getattr(self, a)[2] for a in
                            ("t_min", "t_max", "alpha", "reflectance")]))

    def designs(self):
        """All grid cells in deterministic lexicographic axis order."""
        for t_lo, t_hi, a, r in itertools.product(
            self.axis_values("t_min"), self.axis_values("t_max"),
            self.axis_values("alpha"), self.axis_values("reflectance"),
        ):
            yield ReflectorDesign(float(t_lo), float(t_hi), float(a), float(r))

    def bounds(self) -> list[tuple[float, float]]:
        return [(getattr(self, a)[0], getattr(self, a)[1]) for a in
                ("t_min", "t_max", "alpha", "reflectance")]

    def mount_for(self, profile: ReflectorProfile) -> MountingConfig:
        return MountingConfig.default_for(profile, clearance=self.clearance)

    def curve_for(self, profile: ReflectorProfile) -> ResponseCurve:
        grid = angle_grid(0.0, profile.alpha, self.angle_step)
        return simulate_response(self.fiber, profile, self.mount_for(profile), grid)


def default_design_space(**overrides) -> DesignSpace:
    """The stock exploration space with a gain pinned to full-scale output.

    k_v is scaled so the best design in the space (closest gap, highest
    reflectance) peaks exactly at v_max.
    """
    space = DesignSpace(**overrides)
    best_surface = SurfaceFinish("best", space.reflectance[1])
    k_v = full_scale_k_v(space.fiber, space.clearance, best_surface)
    return replace(space, fiber=replace(space.fiber, k_v=k_v))


def _check_window(curve: ResponseCurve, window: tuple[float, float]) -> None:
    q = curve.angles
    lo, hi = window
    if lo >= hi:
        raise ValueError(f"window must be a non-empty interval, got [{lo:g}, {hi:g}]")
    if lo < q[0] or hi > q[-1]:
        raise SpanError(
            f"window [{lo:g}, {hi:g}] deg outside the evaluated span "
            f"[{q[0]:g}, {q[-1]:g}] deg"
        )


@dataclass(frozen=True)
class VoltageSpan:
    """Voltage swing between the ends of an angle window."""

    window: tuple[float, float] = (0.0, 120.0)

    def score(self, curve: ResponseCurve) -> float:
        _check_window(curve, self.window)
        v = np.interp(self.window, curve.angles, curve.voltages)
        return float(v[1] - v[0])


@dataclass(frozen=True)
class UsableRangeLength:
    """Length (deg) of the longest adequately steep monotone run."""

    min_slope: float = 0.01

    def score(self, curve: ResponseCurve) -> float:
        try:
            r = usable_range(curve, self.min_slope)
        except EmptyRangeError:
            return 0.0
        return r.q_hi - r.q_lo


@dataclass(frozen=True)
class LinearityError:
    """Negated RMS deviation (V) from the best-fit line over a window."""

    window: tuple[float, float] = (0.0, 120.0)

    def score(self, curve: ResponseCurve) -> float:
        _check_window(curve, self.window)
        q = curve.angles
        keep = (q >= self.window[0]) & (q <= self.window[1])
        if int(keep.sum()) < 2:
            raise SpanError(
                f"window [{self.window[0]:g}, {self.window[1]:g}] deg contains "
                "fewer than 2 samples"
            )
        qs = q[keep]
        vs = curve.voltages[keep]
        design = np.column_stack((np.ones_like(qs), qs))
        coef, *_ = np.linalg.lstsq(design, vs, rcond=None)
        resid = vs - design @ coef
        return float(-np.sqrt(np.mean(resid ** 2)))


Objective = Union[VoltageSpan, UsableRangeLength, LinearityError]


def evaluate_design(space: DesignSpace, profile: ReflectorProfile,
                    objective: Objective) -> float:
    """Score one profile under the space's fibre/mount policy."""
    return objective.score(space.curve_for(profile))


def grid_sweep(space: DesignSpace, objective: Objective,
               budget: int = DEFAULT_CELL_BUDGET) -> list[tuple[ReflectorDesign, float]]:
    """Exhaustively score every grid cell, best first.

    Ties break by lexicographic design parameters, so the ranking is
    deterministic regardless of evaluation order.  Raises BudgetError
    before any evaluation if the grid exceeds the cell budget.
    """
    size = space.size()
    if size > budget:
        raise BudgetError(f"grid has {size} cells, exceeding the budget of {budget}")
    results = [
        (design, evaluate_design(space, design.to_profile(), objective))
        for design in space.designs()
    ]
    results.sort(key=lambda r: (-r[1],) + r[0].as_tuple())
    return results


def pattern_search(score_fn: Callable[[np.ndarray], float], start: Sequence[float],
                   bounds: Sequence[tuple[float, float]], budget: int,
                   ) -> tuple[np.ndarray, float, int]:
    """Coordinate-wise step-halving maximisation within box bounds.

    Deterministic: axes are probed in order, +step before -step, and the
    step vector halves after any full pass without improvement.  Returns
    (best point, best score, evaluations used); never fewer than one
    evaluation, never worse than the start.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    lo = np.array([b[0] for b in bounds], dtype=float)
    hi = np.array([b[1] for b in bounds], dtype=float)
    x = np.clip(np.asarray(start, dtype=float), lo, hi)
    fx = score_fn(x)
    evals = 1
    steps = (hi - lo) / 4.0
    min_steps = 1e-12 * np.maximum(hi - lo, 1.0)
    while evals < budget and np.any(steps > min_steps):
        improved = False
        for k in range(x.size):
            if steps[k] <= min_steps[k]:
                continue
            for sign in (1.0, -1.0):
                if evals >= budget:
                    break
                cand = x.copy()
                cand[k] = min(max(cand[k] + sign * steps[k], lo[k]), hi[k])
                if cand[k] == x[k]:
                    continue
                fc = score_fn(cand)
                evals += 1
                if fc > fx:
                    x, fx = cand, fc
                    improved = True
        if not improved:
            steps /= 2.0
    return x, fx, evals


def refine_local(space: DesignSpace, start: ReflectorDesign, objective: Objective,
                 budget: int) -> ReflectorDesign:
    """Pattern-search refinement of a design within the space's bounds.

    Returns a design scoring at least as well as the start; budget
    counts objective evaluations including the start's.
    """
    bounds = space.bounds()
    vec = np.asarray(start.as_tuple(), dtype=float)
    for val, (lo, hi), name in zip(vec, bounds, ("t_min", "t_max", "alpha", "reflectance")):
        if val < lo or val > hi:
            raise ValueError(f"start {name}={val:g} outside the space bounds [{lo:g}, {hi:g}]")

    def score_vec(z: np.ndarray) -> float:
        design = ReflectorDesign(float(z[0]), float(z[1]), float(z[2]), float(z[3]))
        return evaluate_design(space, design.to_profile(), objective)

    best, _, _ = pattern_search(score_vec, vec, bounds, budget)
    return ReflectorDesign(float(best[0]), float(best[1]), float(best[2]), float(best[3]))
