"""Coherence-resonance simulator for Zeeman-degenerate two-level atoms.

Builds the master-equation generator of a single optical transition with
degenerate magnetic sublevels, solves its steady state under a static
longitudinal field, and computes the in-phase/quadrature lock-in signals
produced by a small sinusoidal field modulation, including excited-state
collisional decoherence and averaging over optical detuning.
"""

__version__ = "0.1.0"

from .angular import (
    AngularState,
    DipoleComponents,
    Polarization,
    branching_ratio,
    clebsch_gordan,
    dipole_components,
    linear_polarization_x,
    linear_polarization_z,
    wigner3j,
    wigner6j,
    zeeman_operator,
)
from .config import ScanConfig, load_config, parse_config
from .doppler import average_over_detuning, average_signal_point
from .errors import ConfigError, IntegrationError, ParameterError, SolverError
from .liouvillian import (
    GAMMA,
    SystemParams,
    build_superoperator,
    devectorize,
    isotropic_ground,
    source_vector,
    vectorize,
)
from .parametric import (
    ParametricResponse,
    SignalPoint,
    alpha_beta,
    drive_vector,
    lockin_signals,
    parametric_response,
    scan_b0,
    solve_point,
)
from .presets import PRESETS, Preset, get_preset
from .runner import compare_with_time_domain, format_csv, run_scan, verify_checks
from .steady import absorption, absorption_series, static_signal, steady_state
from .timedomain import integrate, lockin_from_time_domain, numeric_lockin

__all__ = [
    "AngularState",
    "ConfigError",
    "DipoleComponents",
    "GAMMA",
    "IntegrationError",
    "PRESETS",
    "ParameterError",
    "ParametricResponse",
    "Polarization",
    "Preset",
    "ScanConfig",
    "SignalPoint",
    "SolverError",
    "SystemParams",
    "absorption",
    "absorption_series",
    "alpha_beta",
    "average_over_detuning",
    "average_signal_point",
    "branching_ratio",
    "build_superoperator",
    "clebsch_gordan",
    "compare_with_time_domain",
    "devectorize",
    "dipole_components",
    "drive_vector",
    "format_csv",
    "get_preset",
    "integrate",
    "isotropic_ground",
    "linear_polarization_x",
    "linear_polarization_z",
    "load_config",
    "lockin_from_time_domain",
    "lockin_signals",
    "numeric_lockin",
    "parametric_response",
    "parse_config",
    "run_scan",
    "scan_b0",
    "solve_point",
    "source_vector",
    "static_signal",
    "steady_state",
    "vectorize",
    "verify_checks",
    "wigner3j",
    "wigner6j",
    "zeeman_operator",
]
