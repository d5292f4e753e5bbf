"""Planar serial-chain shape reconstruction from per-joint sensor voltages.

Each link of the chain carries its own fibre, reflector, and calibration
model.  A frame of voltages is converted link by link into joint angles,
then composed through standard planar forward kinematics (each joint
angle is relative to the previous link) into a backbone polyline and tip
pose.  Angles are degrees at every interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .calibration import CalibrationModel, fit_angle_model, predict_angle
from .errors import ChainError, ExtrapolationError
from .geometry import MountingConfig, ReflectorProfile, gap_at
from .optics import FiberSpec, theoretical_voltage
from .response import angle_grid, simulate_response


@dataclass(frozen=True)
class ChainLink:
    """One joint+link of the chain, with its sensing and calibration stack."""

    length: float
    fiber: FiberSpec
    profile: ReflectorProfile
    mount: MountingConfig
    model: CalibrationModel

    def __post_init__(self):
        if self.length <= 0.0:
            raise ValueError(f"link length must be positive, got {self.length}")


@dataclass(frozen=True)
class JointChain:
    """Planar serial chain; base_pose is (x mm, y mm, heading deg)."""

    links: tuple[ChainLink, ...]
    base_pose: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        if not self.links:
            raise ValueError("chain needs at least one link")
        object.__setattr__(self, "base_pose", tuple(float(p) for p in self.base_pose))


@dataclass(frozen=True)
class ChainShape:
    """Reconstructed backbone: joint positions from base to tip."""

    joint_positions: tuple[tuple[float, float], ...]
    tip_pose: tuple[float, float, float]
    angles: tuple[float, ...]


def forward_kinematics(chain: JointChain, angles: Sequence[float]) -> ChainShape:
    """Compose joint angles and link lengths into the backbone polyline.

    Heading accumulates each relative joint angle; each link advances
    its length along the current heading.
    """
    if len(angles) != len(chain.links):
        raise ChainError(
            f"got {len(angles)} angles for a chain of {len(chain.links)} links"
        )
    x, y, heading = chain.base_pose
    positions = [(x, y)]
    for link, a in zip(chain.links, angles):
        heading += float(a)
        rad = math.radians(heading)
        x += link.length * math.cos(rad)
        y += link.length * math.sin(rad)
        positions.append((x, y))
    return ChainShape(
        joint_positions=tuple(positions),
        tip_pose=(x, y, heading),
        angles=tuple(float(a) for a in angles),
    )


def angles_from_voltages(chain: JointChain, voltages: Sequence[float]) -> tuple[float, ...]:
    """Per-link calibrated angle estimates, in link order.

    Extrapolation errors are re-raised naming the offending link
    (links are numbered from 1 at the base).
    """
    if len(voltages) != len(chain.links):
        raise ChainError(
            f"got {len(voltages)} voltages for a chain of {len(chain.links)} links"
        )
    angles = []
    for idx, (link, v) in enumerate(zip(chain.links, voltages), start=1):
        try:
            angles.append(predict_angle(link.model, v))
        except ExtrapolationError as exc:
            raise ExtrapolationError(
                f"link {idx}: {exc}", v_lo=exc.v_lo, v_hi=exc.v_hi
            ) from exc
    return tuple(angles)


def reconstruct_shape(chain: JointChain, voltages: Sequence[float]) -> ChainShape:
    """Voltages to angles to backbone shape, in one step."""
    return forward_kinematics(chain, angles_from_voltages(chain, voltages))


def simulate_voltages(chain: JointChain, angles: Sequence[float]) -> tuple[float, ...]:
    """Noise-free voltage frame the chain's sensors would read at a pose."""
    if len(angles) != len(chain.links):
        raise ChainError(
            f"got {len(angles)} angles for a chain of {len(chain.links)} links"
        )
    return tuple(
        theoretical_voltage(link.fiber, gap_at(link.profile, link.mount, float(a)),
                            link.profile.surface)
        for link, a in zip(chain.links, angles)
    )


def calibrated_link(length: float, fiber: FiberSpec, profile: ReflectorProfile,
                    mount: MountingConfig, order: int = 5,
                    window: tuple[float, float] | None = None,
                    step: float = 1.0) -> ChainLink:
    """Build a link whose model is fitted to its own noise-free sweep.

    The fit grid covers ``window`` (default the full mounted span) at
    ``step`` degrees; restricting the window to the joint's working
    range gives a markedly more faithful inverse.
    """
    if window is None:
        window = (max(0.0, -mount.beta_offset), profile.alpha - mount.beta_offset)
    grid = angle_grid(window[0], window[1], step)
    curve = simulate_response(fiber, profile, mount, grid)
    model = fit_angle_model(curve, order)
    return ChainLink(length, fiber, profile, mount, model)
