"""Averaging of signals over optical detuning (velocity-class integration).

A moving atom sees the laser shifted by -k*v; integrating the signal over a
flat slice of detunings emulates a laser centered on a broad velocity
distribution.  Uniform weighting over the stated range is the default; a
Gaussian weight is available for a finite-temperature profile.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .errors import SolverError
from .liouvillian import SystemParams
from .parametric import SignalPoint, solve_point

QUANTITIES = ("static", "inphase", "quadrature")


def _grid(delta_min: float, delta_max: float, n_points: int) -> np.ndarray:
    if not delta_min < delta_max:
        raise ValueError(f"need delta_min < delta_max, got [{delta_min}, {delta_max}]")
    if n_points < 3 or n_points % 2 == 0:
        raise ValueError(f"n_points must be odd and >= 3, got {n_points}")
    return np.linspace(delta_min, delta_max, n_points)


def _weights(grid: np.ndarray, weighting: str, sigma: float | None) -> np.ndarray:
    if weighting == "uniform":
        w = np.ones_like(grid)
    elif weighting == "gaussian":
        if sigma is None:
            sigma = 0.25 * (grid[-1] - grid[0])
        w = np.exp(-((grid / sigma) ** 2))
    else:
        raise ValueError(f"unknown weighting {weighting!r}")
    return w


def _trapezoid_mean(values: np.ndarray, grid: np.ndarray, weights: np.ndarray) -> float:
    dx = np.diff(grid)
    num = np.sum(0.5 * (values[1:] * weights[1:] + values[:-1] * weights[:-1]) * dx)
    den = np.sum(0.5 * (weights[1:] + weights[:-1]) * dx)
    return float(num / den)


def average_signal_point(
    p: SystemParams,
    delta_min: float,
    delta_max: float,
    n_points: int,
    with_parametric: bool = True,
    weighting: str = "uniform",
    sigma: float | None = None,
) -> SignalPoint:
    """All three signals at p.b0, each averaged over the detuning grid."""
    grid = _grid(delta_min, delta_max, n_points)
    weights = _weights(grid, weighting, sigma)
    points = []
    for delta in grid:
        try:
            points.append(solve_point(replace(p, detuning=float(delta)), p.b0, with_parametric))
        except SolverError as exc:
            raise SolverError(f"{exc} (at detuning = {delta:.6g})") from exc
    return SignalPoint(
        b0=p.b0,
        static=_trapezoid_mean(np.array([pt.static for pt in points]), grid, weights),
        inphase=_trapezoid_mean(np.array([pt.inphase for pt in points]), grid, weights),
        quadrature=_trapezoid_mean(np.array([pt.quadrature for pt in points]), grid, weights),
    )


def average_over_detuning(
    p: SystemParams,
    delta_min: float,
    delta_max: float,
    n_points: int,
    quantity: str,
    weighting: str = "uniform",
    sigma: float | None = None,
) -> float:
    """Trapezoidal mean of one signal over a uniform detuning grid.

    quantity selects among "static", "inphase" and "quadrature".  An odd
    n_points guarantees that zero detuning is sampled on a symmetric range.
    """
    if quantity not in QUANTITIES:
        raise ValueError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    point = average_signal_point(
        p,
        delta_min,
        delta_max,
        n_points,
        with_parametric=quantity != "static",
        weighting=weighting,
        sigma=sigma,
    )
    return getattr(point, quantity)
