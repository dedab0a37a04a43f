"""Steady-state solution and the static absorption observable."""

from __future__ import annotations

import numpy as np

from .angular import AngularState, Polarization, dipole_components, raising_coupling
from .errors import SolverError
from .liouvillian import SystemParams, build_superoperator, devectorize, source_vector

# Condition-number ceiling beyond which a steady-state solve is rejected.
MAX_CONDITION = 1e12

# Largest tolerated anti-Hermitian contamination of a solved state; any
# convention bug in the generator shows up here long before it reaches
# this threshold is crossed.
HERMITIZATION_TOL = 1e-9


def steady_state(m: np.ndarray, source: np.ndarray) -> np.ndarray:
    """Solve M vec(sigma) + source = 0 by dense LU with partial pivoting.

    The result is Hermitized; a Hermitization correction above
    HERMITIZATION_TOL or a 1-norm condition estimate above MAX_CONDITION
    raises SolverError (gamma = 0 makes the generator singular, which is
    the usual way to land here).
    """
    try:
        cond = np.linalg.cond(m, 1)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"superoperator is singular: {exc}") from exc
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SolverError(
            f"superoperator too ill-conditioned for a steady state "
            f"(1-norm condition estimate {cond:.3e}); gamma > 0 required"
        )
    y = np.linalg.solve(m, -np.asarray(source, dtype=complex))
    sigma = devectorize(y)
    herm_err = 0.5 * np.abs(sigma - sigma.conj().T).max()
    if herm_err > HERMITIZATION_TOL:
        raise SolverError(
            f"steady state is not Hermitian (correction {herm_err:.3e}); "
            "the generator does not preserve Hermiticity"
        )
    return 0.5 * (sigma + sigma.conj().T)


def absorption_operator(state: AngularState, pol: Polarization) -> np.ndarray:
    """Operator whose trace against sigma gives the absorption functional."""
    return raising_coupling(dipole_components(state), pol)


def absorption(sigma: np.ndarray, state: AngularState, pol: Polarization) -> float:
    """Absorption coefficient Im[e . Tr(sigma Q_eg)] in arbitrary units.

    Only optical (ground-excited) coherences contribute; the value is
    positive for the steady state of a resonantly driven atom.  The overall
    proportionality constant is arbitrary because the reduced dipole element
    is folded into the Rabi frequency.
    """
    r = absorption_operator(state, pol)
    return float(np.trace(sigma @ r).imag)


def absorption_series(sigmas: np.ndarray, state: AngularState, pol: Polarization) -> np.ndarray:
    """Absorption for a stack of density matrices, shape (k, n, n) -> (k,)."""
    r = absorption_operator(state, pol)
    return np.einsum("kij,ji->k", np.asarray(sigmas), r).imag


def static_signal(p: SystemParams, b0: float) -> float:
    """Steady-state absorption at a single static-field value."""
    m = build_superoperator(p, b0)
    sigma = steady_state(m, source_vector(p))
    return absorption(sigma, p.state, p.pol)
