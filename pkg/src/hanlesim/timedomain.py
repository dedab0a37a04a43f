"""Time-domain reference route: direct integration plus numeric lock-in.

Integrates the full master equation with the modulated field
B(t) = b0 + b1*cos(mod_freq * t) using fixed-step classical Runge-Kutta,
then demodulates the absorption signal exactly like a lock-in amplifier.
This route shares no linear-algebra shortcuts with the perturbative
solver and is used to validate it.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IntegrationError
from .liouvillian import (
    GAMMA,
    SystemParams,
    build_superoperator,
    isotropic_ground,
    source_vector,
    vectorize,
)
from .steady import absorption_series

# Fraction of the fastest timescale a single RK4 step may span.
STEP_FRACTION = 0.05


def max_rate(p: SystemParams) -> float:
    """Fastest angular frequency in the problem, for step-size control."""
    return max(GAMMA, p.rabi, abs(p.detuning), abs(p.b0) + abs(p.b1), p.mod_freq)


def default_timestep(p: SystemParams) -> float:
    """Step obeying the precondition, additionally resolving gamma_coll."""
    return STEP_FRACTION / max(max_rate(p), p.gamma_coll)


def integrate(
    p: SystemParams,
    sigma_init: np.ndarray,
    t_end: float,
    dt: float,
    sample_every: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step RK4 trajectory of the modulated master equation.

    Returns (times, states) with states of shape (k, n, n), sampled every
    `sample_every` steps (first and last step always included).  Raises
    for steps that do not resolve the fastest rate and for non-finite or
    non-Hermitian output.
    """
    if dt <= 0 or t_end <= 0:
        raise ValueError("t_end and dt must be positive")
    if dt > STEP_FRACTION / max_rate(p) * (1 + 1e-12):
        raise ValueError(
            f"dt = {dt:g} too large; need dt <= {STEP_FRACTION:g}/max rate "
            f"= {STEP_FRACTION / max_rate(p):g}"
        )
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")

    n = p.state.n
    sigma_init = np.asarray(sigma_init, dtype=complex)
    if sigma_init.shape != (n, n):
        raise ValueError(f"initial state must be {n} x {n}")

    m0 = build_superoperator(p, 0.0)
    mb = build_superoperator(p, 1.0) - m0  # field-linear part of the generator
    src = source_vector(p)
    b0, b1, delta = p.b0, p.b1, p.mod_freq

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        b = b0 + b1 * math.cos(delta * t)
        return m0 @ y + b * (mb @ y) + src

    steps = max(1, int(round(t_end / dt)))
    y = vectorize(sigma_init)
    times = [0.0]
    samples = [y.copy()]
    t = 0.0
    for step in range(1, steps + 1):
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2)
        k4 = rhs(t + dt, y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = step * dt
        if step % sample_every == 0 or step == steps:
            if not np.isfinite(y).all():
                raise IntegrationError(f"non-finite state at t = {t:g}")
            times.append(t)
            samples.append(y.copy())

    states = np.asarray(samples).reshape(len(samples), n, n)
    final = states[-1]
    herm_drift = np.abs(final - final.conj().T).max()
    if herm_drift > 1e-8:
        raise IntegrationError(f"Hermiticity drift {herm_drift:.3e} exceeds 1e-8")
    return np.asarray(times), states


def numeric_lockin(
    times: np.ndarray,
    values: np.ndarray,
    mod_freq: float,
    n_periods: int,
) -> tuple[float, float]:
    """Demodulate a signal at mod_freq over the trailing n_periods periods.

    Returns (2/T) integral of values*cos(mod_freq*t) and of
    values*sin(mod_freq*t) over a window of exactly n_periods modulation
    periods ending at the last sample, by the trapezoidal rule (the window
    start is linearly interpolated onto the sample grid).  The reference
    phase is that of the drive cos(mod_freq * t).
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.ndim != 1 or times.shape != values.shape or len(times) < 3:
        raise ValueError("times and values must be matching 1-d arrays with >= 3 samples")
    if mod_freq <= 0:
        raise ValueError("mod_freq must be positive")
    if n_periods < 1:
        raise ValueError("n_periods must be >= 1")

    window = n_periods * 2.0 * math.pi / mod_freq
    t_start = times[-1] - window
    if t_start < times[0] - 1e-9:
        raise ValueError(
            f"series covers {(times[-1] - times[0]) * mod_freq / (2 * math.pi):.3f} "
            f"periods, need an integer window of {n_periods}"
        )

    i0 = int(np.searchsorted(times, t_start, side="left"))
    if i0 > 0 and times[i0] > t_start:
        # Interpolate the window edge so the integral spans exact periods.
        f = (t_start - times[i0 - 1]) / (times[i0] - times[i0 - 1])
        v_start = values[i0 - 1] + f * (values[i0] - values[i0 - 1])
        t_win = np.concatenate(([t_start], times[i0:]))
        v_win = np.concatenate(([v_start], values[i0:]))
    else:
        t_win = times[i0:]
        v_win = values[i0:]

    cos_ref = np.cos(mod_freq * t_win)
    sin_ref = np.sin(mod_freq * t_win)
    dt_seg = np.diff(t_win)

    def trapz(integrand: np.ndarray) -> float:
        return float(np.sum(0.5 * (integrand[1:] + integrand[:-1]) * dt_seg))

    inphase = 2.0 / window * trapz(v_win * cos_ref)
    quadrature = 2.0 / window * trapz(v_win * sin_ref)
    return inphase, quadrature


def lockin_from_time_domain(
    p: SystemParams,
    n_periods: int = 8,
    transient_factor: float = 8.0,
    dt: float | None = None,
    samples_per_period: int = 256,
) -> tuple[float, float]:
    """In-phase/quadrature signals from the full time-domain pipeline.

    Starts from the isotropic ground state, integrates through a transient
    of transient_factor/gamma (gamma is the slowest rate), then demodulates
    the absorption signal over the trailing n_periods periods.
    """
    if p.mod_freq <= 0:
        raise ValueError("lock-in needs mod_freq > 0")
    if p.gamma <= 0:
        raise ValueError("lock-in needs gamma > 0 to reach a periodic state")
    if dt is None:
        dt = default_timestep(p)
    period = 2.0 * math.pi / p.mod_freq
    t_end = transient_factor / p.gamma + n_periods * period
    sample_every = max(1, int(period / samples_per_period / dt))
    times, states = integrate(p, isotropic_ground(p.state), t_end, dt, sample_every=sample_every)
    lam = absorption_series(states, p.state, p.pol)
    return numeric_lockin(times, lam, p.mod_freq, n_periods)
