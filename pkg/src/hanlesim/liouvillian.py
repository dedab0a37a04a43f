"""Assembly of the master-equation superoperator for one transition.

The density matrix evolves as

    d(sigma)/dt = -i [Delta*Pe - Mz*B + V, sigma]
                  - (Gamma + gamma_coll)/2 {Pe, sigma}
                  + b*Gamma sum_q Qge^q sigma Qeg^q
                  - gamma*sigma + gamma*sigma0
                  + gamma_coll * Pe Tr(Pe sigma) / (2Fe+1)

with Gamma = 1 fixing the unit of time, all other rates and Larmor
frequencies quoted in units of Gamma.  Everything linear in sigma is packed
into a single n^2 x n^2 matrix acting on row-major vectorized matrices
(sigma[i, j] -> y[i*n + j]); the constant gamma*sigma0 feed is kept as a
separate source vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .angular import (
    AngularState,
    Polarization,
    dipole_components,
    linear_polarization_x,
    lowering_coupling,
    zeeman_operator,
)
from .errors import ParameterError

# Spontaneous decay rate of the excited level; all rates are quoted in
# units of this, so it is identically 1.
GAMMA = 1.0


@dataclass(frozen=True)
class SystemParams:
    """All rates and field amplitudes entering the master equation.

    rabi       : reduced Rabi frequency (reduced dipole element folded in)
    detuning   : optical detuning omega_0 - omega
    gamma      : transit relaxation rate (> 0 for a solvable steady state;
                 0 is allowed for structural checks of the generator)
    gamma_coll : collisional decoherence rate of the excited state
    branching  : fraction of spontaneous decays returning to this ground level
    b0, b1     : static field and modulation amplitude as Larmor frequencies
    mod_freq   : angular frequency of the field modulation
    pol        : optical polarization (defaults to linear, perpendicular to B)

    All quantities are dimensionless, expressed in units of the spontaneous
    decay rate GAMMA = 1.
    """

    state: AngularState
    rabi: float
    gamma: float
    detuning: float = 0.0
    gamma_coll: float = 0.0
    branching: float = 1.0
    b0: float = 0.0
    b1: float = 0.0
    mod_freq: float = 0.0
    pol: Polarization = field(default_factory=linear_polarization_x)

    def __post_init__(self):
        if self.rabi < 0:
            raise ParameterError(f"rabi must be >= 0, got {self.rabi}")
        if self.gamma < 0:
            raise ParameterError(f"gamma must be >= 0, got {self.gamma}")
        if self.gamma_coll < 0:
            raise ParameterError(f"gamma_coll must be >= 0, got {self.gamma_coll}")
        if not 0.0 <= self.branching <= 1.0:
            raise ParameterError(f"branching must lie in [0, 1], got {self.branching}")
        if self.mod_freq < 0:
            raise ParameterError(f"mod_freq must be >= 0, got {self.mod_freq}")


def vectorize(mat: np.ndarray) -> np.ndarray:
    """Row-major vectorization: sigma[i, j] -> y[i*n + j]."""
    return np.asarray(mat, dtype=complex).reshape(-1)


def devectorize(vec: np.ndarray) -> np.ndarray:
    n = isqrt(len(vec))
    if n * n != len(vec):
        raise ValueError(f"vector of length {len(vec)} is not a vectorized square matrix")
    return np.asarray(vec, dtype=complex).reshape(n, n)


def left_multiplier(x: np.ndarray) -> np.ndarray:
    """Superoperator for sigma -> X sigma under row-major vectorization."""
    return np.kron(x, np.eye(x.shape[0]))


def right_multiplier(x: np.ndarray) -> np.ndarray:
    """Superoperator for sigma -> sigma X under row-major vectorization."""
    return np.kron(np.eye(x.shape[0]), x.T)


def ground_projector(state: AngularState) -> np.ndarray:
    diag = np.zeros(state.n)
    diag[: state.dg] = 1.0
    return np.diag(diag)


def excited_projector(state: AngularState) -> np.ndarray:
    diag = np.zeros(state.n)
    diag[state.dg :] = 1.0
    return np.diag(diag)


def isotropic_ground(state: AngularState) -> np.ndarray:
    """Isotropic ground-level density matrix with unit total population."""
    return ground_projector(state) / state.dg


def hamiltonian(p: SystemParams, b: float) -> np.ndarray:
    """Rotating-frame Hamiltonian Delta*Pe - Mz*B + V for field value b.

    The interaction is V = (rabi/2)(W + W^dagger) with W the polarization
    contraction of the lowering dipole components; for a real polarization
    vector this equals (rabi/2) e.Q.
    """
    state = p.state
    lower = lowering_coupling(dipole_components(state), p.pol)
    h = p.detuning * excited_projector(state) - b * zeeman_operator(state)
    h = h.astype(complex)
    h += 0.5 * p.rabi * (lower + lower.conj().T)
    return h

def build_superoperator(p: SystemParams, b: float) -> np.ndarray:
    """Time-independent generator M with d(vec sigma)/dt = M vec(sigma) + source.

    b is the instantaneous Larmor field value; the generator is affine in b,
    which the modulation solver and the time-domain integrator both exploit.
    With gamma = 0 the matrix is singular (the trace functional is a left
    null vector for branching 1); the steady-state solver rejects it there.
    """
    state = p.state
    n = state.n
    dip = dipole_components(state)
    pe = excited_projector(state)

    h = hamiltonian(p, b)
    m = -1j * (left_multiplier(h) - right_multiplier(h))

    m -= 0.5 * (GAMMA + p.gamma_coll) * (left_multiplier(pe) + right_multiplier(pe))

    feed = np.zeros((n * n, n * n), dtype=complex)
    for q in (-1, 0, 1):
        ge = dip.ge_embedded(q)
        eg = dip.eg_embedded(q)
        feed += np.kron(ge, eg.T)
    m += p.branching * GAMMA * feed

    m -= p.gamma * np.eye(n * n)

    if p.gamma_coll > 0:
        # Isotropic repumping of the excited level: sigma -> Pe Tr(Pe sigma)/de.
        pe_vec = vectorize(pe)
        m += (p.gamma_coll / state.de) * np.outer(pe_vec, pe_vec)
    return m


def source_vector(p: SystemParams) -> np.ndarray:
    """Constant feed vec(gamma * sigma0) from atoms entering the beam.

    Nonzero only on ground-diagonal slots, each entry gamma/(2Fg+1).
    """
    return p.gamma * vectorize(isotropic_ground(p.state))
