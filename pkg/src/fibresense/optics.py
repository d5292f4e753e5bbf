"""Gaussian light-coupling model for a single emit/receive fibre.

The fibre launches a diverging cone of light (half-angle theta) onto the
reflector a gap h away.  The reflected spot arriving back at the fibre
plane has a Gaussian radial intensity profile whose width w grows with
the folded path length, so the flux recaptured by the fibre core falls
off as the spot outgrows the aperture.  A conversion coefficient maps
recaptured flux to detector voltage, clamped at the supply rail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError
from .geometry import SurfaceFinish


@dataclass(frozen=True)
class FiberSpec:
    """Optical source/detector parameters.

    d: core aperture diameter (mm); theta: transmitting half-divergence
    (deg); phi_src: source flux in arbitrary but fixed power units;
    coupler_factor: fraction of returning power reaching the detector
    branch of the 1x2 coupler; k_v: volts per power unit; v_max: supply
    and ADC clamp voltage.
    """

    d: float = 0.9
    theta: float = 10.0
    phi_src: float = 1.0
    coupler_factor: float = 0.5
    k_v: float = 1.0
    v_max: float = 5.0

    def __post_init__(self):
        if self.d <= 0.0:
            raise ValueError(f"fibre diameter must be positive, got {self.d}")
        if not 0.0 <= self.theta < 90.0:
            raise ValueError(f"divergence must be in [0, 90) deg, got {self.theta}")
        if self.phi_src <= 0.0:
            raise ValueError(f"source flux must be positive, got {self.phi_src}")
        if not 0.0 < self.coupler_factor <= 1.0:
            raise ValueError(f"coupler_factor must be in (0, 1], got {self.coupler_factor}")
        if self.k_v <= 0.0:
            raise ValueError(f"k_v must be positive, got {self.k_v}")
        if self.v_max <= 0.0:
            raise ValueError(f"v_max must be positive, got {self.v_max}")


def _check_gap(h) -> None:
    if np.any(np.asarray(h) < 0.0):
        raise ValueError("gap h must be >= 0")


def gaussian_width(fiber: FiberSpec, h):
    """Gaussian spot width w (mm) at the fibre plane for gap h (mm).

    w(h) = d/2 + 2 h tan(theta): the beam starts at the core radius and
    spreads along the doubled (out-and-back) path folded by the
    reflector.
    """
    _check_gap(h)
    w = fiber.d / 2.0 + 2.0 * np.asarray(h, dtype=float) * math.tan(math.radians(fiber.theta))
    return float(w) if np.ndim(h) == 0 else w


def coupled_flux(fiber: FiberSpec, h):
    """Flux recaptured by the fibre core at gap h, in source power units.

    Closed form phi_src * (1 - exp(-d^2 / (2 w(h)^2))) of the radial
    integral of the returning Gaussian spot over the core r in [0, d/2],
    with the peak intensity 2*phi_src / (pi w^2) normalised so the spot
    carries the full source power at every distance.  Strictly inside
    (0, phi_src).
    """
    w = gaussian_width(fiber, h)
    flux = fiber.phi_src * (1.0 - np.exp(-fiber.d ** 2 / (2.0 * np.asarray(w) ** 2)))
    return float(flux) if np.ndim(h) == 0 else flux


def coupled_flux_quadrature(fiber: FiberSpec, h: float, rel_tol: float = 1e-9,
                            max_depth: int = 48) -> float:
    """Recaptured flux by adaptive Simpson quadrature of the spot integral.

    Numerically integrates I0(h) * exp(-2 r^2 / w^2) * 2 pi r over
    r in [0, d/2] with interval halving until the local Richardson error
    estimate meets rel_tol.  Independent numerical route used to
    cross-check coupled_flux.
    """
    if not 0.0 < rel_tol <= 1e-6:
        raise ValueError(f"rel_tol must be in (0, 1e-6], got {rel_tol}")
    h = float(h)
    _check_gap(h)
    w = gaussian_width(fiber, h)
    i0 = 2.0 * fiber.phi_src / (math.pi * w * w)

    def f(r: float) -> float:
        return i0 * math.exp(-2.0 * r * r / (w * w)) * 2.0 * math.pi * r

    a, b = 0.0, fiber.d / 2.0
    fa, fb = f(a), f(b)
    m = (a + b) / 2.0
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol = abs(whole) * rel_tol

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = (a + b) / 2.0
        lm, rm = (a + m) / 2.0, (m + b) / 2.0
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        err = (left + right - whole) / 15.0
        if abs(err) <= tol:
            return left + right + err
        if depth >= max_depth:
            raise QuadratureError(
                f"flux quadrature did not converge to rel_tol={rel_tol:g} "
                f"within {max_depth} subdivisions"
            )
        return (recurse(a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
                + recurse(m, b, fm, frm, fb, right, tol / 2.0, depth + 1))

    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def theoretical_voltage(fiber: FiberSpec, h, surface: SurfaceFinish):
    """Detector voltage at gap h: flux * reflectance * coupler_factor * k_v.

    Clamped to [0, v_max], the supply rail of the acquisition board.
    """
    v = coupled_flux(fiber, h) * surface.reflectance * fiber.coupler_factor * fiber.k_v
    v = np.clip(v, 0.0, fiber.v_max)
    return float(v) if np.ndim(h) == 0 else v


def full_scale_k_v(fiber: FiberSpec, h_ref: float, surface: SurfaceFinish,
                   v_target: float | None = None) -> float:
    """Conversion coefficient that maps the response at gap h_ref to v_target.

    v_target defaults to the fibre's v_max, i.e. the closest approach of
    the sweep uses the full output scale.  Absolute source flux and
    detector gain are rarely known for a bench rig, so the overall gain
    is pinned this way instead.
    """
    if v_target is None:
        v_target = fiber.v_max
    if v_target <= 0.0:
        raise ValueError(f"v_target must be positive, got {v_target}")
    if surface.reflectance <= 0.0:
        raise ValueError("cannot scale the gain against a non-reflecting surface")
    base = coupled_flux(fiber, h_ref) * surface.reflectance * fiber.coupler_factor
    return v_target / base
