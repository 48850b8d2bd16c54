"""Log-log power-law fitting with residual reporting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ScalingFit", "fit_power_law"]


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares fit of y ~ prefactor * x**exponent on log-log axes."""

    exponent: float
    prefactor: float
    residual_rms: float  # rms of log-space residuals
    x: np.ndarray
    y: np.ndarray

    def predict(self, x) -> np.ndarray:
        return self.prefactor * np.power(np.asarray(x, dtype=float), self.exponent)


def fit_power_law(x, y) -> ScalingFit:
    """Fit log y against log x by linear least squares.

    Requires at least two points and strictly positive data.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if x.size < 2:
        raise ValueError("power-law fit needs at least two points")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise ValueError("power-law fit requires positive data")
    lx = np.log(x)
    ly = np.log(y)
    design = np.column_stack([lx, np.ones_like(lx)])
    coef, *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - design @ coef
    return ScalingFit(
        exponent=float(coef[0]),
        prefactor=float(np.exp(coef[1])),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        x=x,
        y=y,
    )
