"""Exception types shared across the package."""


class FibreSenseError(Exception):
    """Base class for all errors raised by fibresense."""


class SpanError(FibreSenseError, ValueError):
    """An angle fell outside the span a profile or window can answer for."""


class MountingError(FibreSenseError, ValueError):
    """Fibre/reflector mounting geometry cannot keep the gap positive."""


class QuadratureError(FibreSenseError, ArithmeticError):
    """Adaptive quadrature failed to converge within its subdivision budget."""


class FitError(FibreSenseError, ValueError):
    """Calibration fit is underdetermined, degenerate, or ill-conditioned."""


class ExtrapolationError(FibreSenseError, ValueError):
    """A voltage outside the calibrated domain was passed to an estimator."""

    def __init__(self, message: str, v_lo: float | None = None, v_hi: float | None = None):
        super().__init__(message)
        self.v_lo = v_lo
        self.v_hi = v_hi


class EmptyRangeError(FibreSenseError, ValueError):
    """No part of the curve qualifies as a usable sensing range."""


class ChainError(FibreSenseError, ValueError):
    """Joint-chain input does not match the chain's link count."""


class BudgetError(FibreSenseError, ValueError):
    """A sweep or search would exceed its evaluation budget."""


class ConfigError(FibreSenseError, ValueError):
    """Configuration document is malformed or violates an invariant."""


class CurveFormatError(FibreSenseError, ValueError):
    """Response-curve CSV file is malformed or out of order."""
