"""First-order response to a modulated field: lock-in signals.

With B(t) = b0 + b1*cos(delta*t) the density matrix splits into a static
part sigma0 and a first-order correction sigma1(t) = alpha*cos(delta*t)
+ beta*sin(delta*t).  Substituting into the master equation gives the
coupled pair

    delta*beta  = M alpha + A,        delta*alpha = -M beta,

with A = vec(i [Mz*b1, sigma0]), solved in closed form by

    alpha = -M (delta^2 I + M^2)^{-1} A,
    beta  = delta (delta^2 I + M^2)^{-1} A.

The sign of alpha follows from the substitution above and is confirmed
against the time-domain integrator; at delta = 0 it reduces to the static
response M alpha = -A, i.e. the derivative of the steady state with
respect to the field.  The in-phase and quadrature absorption signals are
the absorption functional applied to alpha and beta.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .angular import zeeman_operator
from .errors import ParameterError, SolverError
from .liouvillian import SystemParams, build_superoperator, devectorize, source_vector, vectorize
from .steady import MAX_CONDITION, absorption, steady_state


@dataclass(frozen=True)
class ParametricResponse:
    """First-order response vectors and their lock-in absorption signals."""

    alpha: np.ndarray
    beta: np.ndarray
    inphase: float
    quadrature: float


@dataclass(frozen=True)
class SignalPoint:
    """One point of a static-field scan."""

    b0: float
    static: float
    inphase: float
    quadrature: float


def drive_vector(sigma0: np.ndarray, state, b1: float) -> np.ndarray:
    """Modulation drive A = vec(i [Mz*b1, sigma0]); Hermitian after devectorizing."""
    mz = zeeman_operator(state)
    return vectorize(1j * b1 * (mz @ sigma0 - sigma0 @ mz))


def alpha_beta(m: np.ndarray, drive: np.ndarray, mod_freq: float) -> tuple[np.ndarray, np.ndarray]:
    """Solve the first-order response for cosine drive at frequency mod_freq.

    One LU solve of (mod_freq^2 I + M^2) W = A, then alpha = -M W and
    beta = mod_freq * W.  beta vanishes identically at mod_freq = 0.
    """
    drive = np.asarray(drive, dtype=complex)
    k = mod_freq**2 * np.eye(m.shape[0]) + m @ m
    try:
        cond = np.linalg.cond(k, 1)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"modulation-response system is singular: {exc}") from exc
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SolverError(
            f"modulation-response system too ill-conditioned "
            f"(1-norm condition estimate {cond:.3e})"
        )
    w = np.linalg.solve(k, drive)
    return -m @ w, mod_freq * w


def lockin_signals(alpha: np.ndarray, beta: np.ndarray, state, pol) -> tuple[float, float]:
    """In-phase and quadrature absorption signals from the response vectors."""
    return (
        absorption(devectorize(alpha), state, pol),
        absorption(devectorize(beta), state, pol),
    )


def parametric_response(m: np.ndarray, sigma0: np.ndarray, p: SystemParams) -> ParametricResponse:
    """Drive, response and lock-in signals for one solved steady state."""
    drive = drive_vector(sigma0, p.state, p.b1)
    alpha, beta = alpha_beta(m, drive, p.mod_freq)
    inphase, quadrature = lockin_signals(alpha, beta, p.state, p.pol)
    return ParametricResponse(alpha=alpha, beta=beta, inphase=inphase, quadrature=quadrature)


def solve_point(p: SystemParams, b0: float, with_parametric: bool = True) -> SignalPoint:
    """Steady state plus lock-in signals at one static-field value."""
    m = build_superoperator(p, b0)
    sigma0 = steady_state(m, source_vector(p))
    static = absorption(sigma0, p.state, p.pol)
    if not with_parametric:
        return SignalPoint(b0=b0, static=static, inphase=float("nan"), quadrature=float("nan"))
    response = parametric_response(m, sigma0, p)
    return SignalPoint(b0=b0, static=static, inphase=response.inphase, quadrature=response.quadrature)


def scan_b0(p: SystemParams, b0_grid, jobs: int = 1) -> list[SignalPoint]:
    """Signals over a grid of static fields, returned in grid order.

    Points are independent; jobs > 1 evaluates them on a thread pool (the
    dense linear algebra releases the GIL).  Solver failures are re-raised
    with the offending field value attached.
    """
    grid = [float(b) for b in b0_grid]
    if not all(np.isfinite(grid)):
        raise ParameterError("b0 grid must be finite")
    if p.gamma <= 0:
        raise ParameterError("scan requires gamma > 0 for a unique steady state")

    def point(b0: float) -> SignalPoint:
        try:
            return solve_point(p, b0)
        except SolverError as exc:
            raise SolverError(f"{exc} (at b0_larmor = {b0:.6g})") from exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(point, grid))
    return [point(b0) for b0 in grid]
