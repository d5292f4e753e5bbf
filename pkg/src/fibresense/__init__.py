"""Fibre-optic joint-angle sensing with curvature-varying reflectors.

A toolkit to predict sensor voltage from reflector geometry through a
Gaussian light-coupling model, calibrate polynomial angle-from-voltage
estimators, reconstruct multi-joint planar shape, and search reflector
designs for range, sensitivity, and linearity.
"""

from .calibration import (CalibrationModel, UsableRange, fit_angle_model, load_model,
                          predict_angle, rmse, save_model, usable_range)
from .curve_io import read_curve_csv, write_curve_csv
from .design import (DesignSpace, LinearityError, ReflectorDesign, UsableRangeLength,
                     VoltageSpan, default_design_space, evaluate_design, grid_sweep,
                     pattern_search, refine_local)
from .errors import (BudgetError, ChainError, ConfigError, CurveFormatError,
                     EmptyRangeError, ExtrapolationError, FibreSenseError, FitError,
                     MountingError, QuadratureError, SpanError)
from .geometry import (SILVER_TAPE, WHITE_RESIN, WHITE_TAPE, MountingConfig,
                       ReflectorProfile, SurfaceFinish, gap_at, outline_points,
                       thickness_at)
from .kinematics import (ChainLink, ChainShape, JointChain, angles_from_voltages,
                         calibrated_link, forward_kinematics, reconstruct_shape,
                         simulate_voltages)
from .optics import (FiberSpec, coupled_flux, coupled_flux_quadrature, full_scale_k_v,
                     gaussian_width, theoretical_voltage)
from .response import (ADC_STEP_10BIT_5V, NoiseModel, ResponseCurve, angle_grid,
                       simulate_response, sweep_surfaces)
from .svgplot import emit_plot

__version__ = "0.1.0"

__all__ = [
    "ADC_STEP_10BIT_5V",
    "BudgetError",
    "CalibrationModel",
    "ChainError",
    "ChainLink",
    "ChainShape",
    "ConfigError",
    "CurveFormatError",
    "DesignSpace",
    "EmptyRangeError",
    "ExtrapolationError",
    "FiberSpec",
    "FibreSenseError",
    "FitError",
    "JointChain",
    "LinearityError",
    "MountingConfig",
    "MountingError",
    "NoiseModel",
    "QuadratureError",
    "ReflectorDesign",
    "ReflectorProfile",
    "ResponseCurve",
    "SILVER_TAPE",
    "SpanError",
    "SurfaceFinish",
    "UsableRange",
    "UsableRangeLength",
    "VoltageSpan",
    "WHITE_RESIN",
    "WHITE_TAPE",
    "angle_grid",
    "angles_from_voltages",
    "calibrated_link",
    "coupled_flux",
    "coupled_flux_quadrature",
    "default_design_space",
    "emit_plot",
    "evaluate_design",
    "fit_angle_model",
    "forward_kinematics",
    "full_scale_k_v",
    "gap_at",
    "gaussian_width",
    "grid_sweep",
    "load_model",
    "outline_points",
    "pattern_search",
    "predict_angle",
    "read_curve_csv",
    "reconstruct_shape",
    "refine_local",
    "rmse",
    "save_model",
    "simulate_response",
    "simulate_voltages",
    "sweep_surfaces",
    "theoretical_voltage",
    "thickness_at",
    "usable_range",
    "write_curve_csv",
]
