"""Polynomial angle-from-voltage calibration and usable-range extraction.

A response curve is inverted by least-squares fitting a polynomial that
maps voltage to joint angle.  Fitting happens on a centred and scaled
voltage variable: raw fifth-order fits on volt-scale data are badly
conditioned, so the normalisation constants are part of the model.
Prediction outside the fitted voltage domain is a hard error, because
polynomials diverge immediately beyond their data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import EmptyRangeError, ExtrapolationError, FitError
from .response import ResponseCurve


@dataclass(frozen=True)
class CalibrationModel:
    """Polynomial angle estimator over a normalised voltage variable.

    coeffs are ascending powers of x = (v - v_center) / v_scale; the fit
    is only valid for voltages inside v_domain.
    """

    order: int
    coeffs: tuple[float, ...]
    v_center: float
    v_scale: float
    v_domain: tuple[float, float]
    rmse_deg: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        object.__setattr__(self, "v_domain", (float(self.v_domain[0]), float(self.v_domain[1])))
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")
        if self.v_scale <= 0.0:
            raise ValueError(f"v_scale must be positive, got {self.v_scale}")
        if self.v_domain[0] >= self.v_domain[1]:
            raise ValueError(f"v_domain must be a non-empty interval, got {self.v_domain}")
        if self.rmse_deg < 0.0:
            raise ValueError(f"rmse_deg must be >= 0, got {self.rmse_deg}")


@dataclass(frozen=True)
class UsableRange:
    """Contiguous angle interval with adequately steep, rising voltage."""

    q_lo: float
    q_hi: float
    delta_v: float


def _predict_normalised(model: CalibrationModel, v: np.ndarray) -> np.ndarray:
    x = (v - model.v_center) / model.v_scale
    return npoly.polyval(x, model.coeffs)


def fit_angle_model(curve: ResponseCurve, order: int = 5) -> CalibrationModel:
    """Least-squares polynomial mapping voltage to joint angle.

    Solves on the centred/scaled variable (v - mean) / half-range via an
    orthogonal-factorisation least-squares solve, never raw normal
    equations.  The training RMSE is stored on the model.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    v = curve.voltages
    q = curve.angles
    if len(curve) < order + 1:
        raise FitError(
            f"underdetermined fit: {len(curve)} samples for {order + 1} coefficients"
        )
    v_lo, v_hi = float(v.min()), float(v.max())
    if v_hi == v_lo:
        raise FitError("degenerate input: voltages span a zero range")
    v_center = float(v.mean())
    v_scale = (v_hi - v_lo) / 2.0
    x = (v - v_center) / v_scale
    vander = npoly.polyvander(x, order)
    coeffs, _, rank, _ = np.linalg.lstsq(vander, q, rcond=None)
    if rank < order + 1:
        raise FitError(
            f"ill-conditioned fit: design matrix rank {rank} < {order + 1}; "
            "reduce the order or supply more distinct voltages"
        )
    coeffs = tuple(float(c) for c in coeffs)
    resid = npoly.polyval(x, coeffs) - q
    rmse_deg = float(np.sqrt(np.mean(resid ** 2)))
    return CalibrationModel(order, coeffs, v_center, v_scale, (v_lo, v_hi), rmse_deg)


def predict_angle(model: CalibrationModel, v: float) -> float:
    """Estimated joint angle (deg) for a voltage inside the fit domain.

    Evaluation uses nested multiplication on the normalised variable.
    Voltages outside v_domain raise ExtrapolationError, endpoints
    included as valid.
    """
    v = float(v)
    lo, hi = model.v_domain
    if v < lo or v > hi:
        raise ExtrapolationError(
            f"voltage {v:g} V outside the calibrated domain [{lo:g}, {hi:g}] V",
            v_lo=lo, v_hi=hi,
        )
    return float(_predict_normalised(model, np.asarray(v)))


def rmse(model: CalibrationModel, curve: ResponseCurve) -> float:
    """Root-mean-square angle residual of the model over a curve."""
    v = curve.voltages
    lo, hi = model.v_domain
    bad = (v < lo) | (v > hi)
    if np.any(bad):
        offender = float(v[np.argmax(bad)])
        raise ExtrapolationError(
            f"voltage {offender:g} V outside the calibrated domain [{lo:g}, {hi:g}] V",
            v_lo=lo, v_hi=hi,
        )
    resid = _predict_normalised(model, v) - curve.angles
    return float(np.sqrt(np.mean(resid ** 2)))


def usable_range(curve: ResponseCurve, min_slope: float = 0.01) -> UsableRange:
    """Longest run of strictly rising samples with slope >= min_slope V/deg.

    Slopes are finite differences of consecutive samples, honest to the
    sampled data.  Ties on run length break towards larger voltage
    swing, then towards the smaller starting angle.
    """
    if min_slope <= 0.0:
        raise ValueError(f"min_slope must be positive, got {min_slope}")
    if len(curve) < 2:
        raise ValueError("curve needs at least 2 samples")
    q = curve.angles
    v = curve.voltages
    dv = np.diff(v)
    dq = np.diff(q)
    ok = (dv > 0.0) & (dv / dq >= min_slope)

    best = None
    i = 0
    n_pairs = len(ok)
    while i < n_pairs:
        if not ok[i]:
            i += 1
            continue
        j = i
        while j < n_pairs and ok[j]:
            j += 1
        # run covers samples i..j inclusive
        key = (j - i, float(v[j] - v[i]), -float(q[i]))
        if best is None or key > best[0]:
            best = (key, i, j)
        i = j
    if best is None:
        raise EmptyRangeError(
            f"no consecutive samples rise at >= {min_slope:g} V/deg"
        )
    _, i, j = best
    return UsableRange(float(q[i]), float(q[j]), float(v[j] - v[i]))


def save_model(model: CalibrationModel, path) -> None:
    """Write a model as JSON with full float precision (bit-exact reload)."""
    doc = {
        "order": model.order,
        "coeffs": list(model.coeffs),
        "v_center": model.v_center,
        "v_scale": model.v_scale,
        "v_domain": list(model.v_domain),
        "rmse_deg": model.rmse_deg,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_model(path) -> CalibrationModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        return CalibrationModel(
            order=int(doc["order"]),
            coeffs=tuple(doc["coeffs"]),
            v_center=float(doc["v_center"]),
            v_scale=float(doc["v_scale"]),
            v_domain=(doc["v_domain"][0], doc["v_domain"][1]),
            rmse_deg=float(doc["rmse_deg"]),
        )
    except (KeyError, IndexError, TypeError) as exc:
        raise FitError(f"malformed calibration file {path}: {exc}") from exc
