"""Steady-state entanglement of two cavity-magnon-phonon systems sharing
two-mode squeezed drive light.

The package models a pair of microwave cavities, each hosting a magnon
mode coupled to a phonon mode, with the two cavities fed by the halves of
a two-mode squeezed vacuum. It builds the linearized drift and noise
matrices, solves for the steady-state covariance matrix, and quantifies
cross-site entanglement through the logarithmic negativity -- including
the phonon-phonon pair that inherits the drive correlations through the
cavity-magnon-phonon chain.

High-level entry points:

``default_params`` / ``params_from_config``
    Build a validated parameter set (Hz in, rad/s inside).
``build_model`` and ``full_report``
    Linearized model and the three cross-site entanglement figures.
``run_sweep`` / ``find_critical_temperature``
    Parameter grids and the entanglement-death temperature.
``steady_by_integration`` / ``integrate_pre_rwa``
    Independent time-domain cross-checks of the algebraic solver.
``audit``
    Consistency audit of the linearization and sideband assumptions.
"""

from ._version import __version__
from .config import (GLOBAL_KEYS, OPTIONAL_KEYS, SITE_KEYS, SWEEPABLE,
                     default_config, default_params, known_keys,
                     parse_config_file, parse_config_text, parse_overrides,
                     params_from_config, resolve, resolved_site_view,
                     thresholds_from_config)
from .errors import (BracketError, BudgetError, ConfigError, ConvergenceError,
                     DivergenceError, FixedPointError, MagnomechError,
                     NumericsError, SearchError, StabilityError)
from .linalg import (eigenvalues, propagate_covariance, rk4_step,
                     solve_lyapunov, spectral_abscissa)
from .model import (HBAR, BOLTZMANN, MODE_INDEX, MODE_LABELS, LinearModel,
                    NoiseSpec, SemiclassicalState, SystemParams, build_drift,
                    build_diffusion, build_model, build_noise,
                    rabi_for_target_G, solve_semiclassical, thermal_occupancy)
from .oracle import (OracleConfig, integrate_pre_rwa, pre_rwa_drift,
                     rescale_damping, steady_by_integration)
from .steadystate import (CovarianceMatrix, EntanglementReport, full_report,
                          log_negativity, partial_transpose, reduce_modes,
                          reduce_pair, steady_covariance,
                          symplectic_eigenvalues, tmsv_covariance)
from .sweep import (Axis, ResultRow, SweepSpec, find_critical_temperature,
                    run_point, run_sweep, spec_from_config, write_csv,
                    write_json)
from .validity import ValidityReport, ValidityThresholds, audit, spin_count

__all__ = [
    "__version__",
    # parameters and configuration
    "SystemParams", "default_params", "params_from_config", "default_config",
    "parse_config_file", "parse_config_text", "parse_overrides", "resolve",
    "resolved_site_view", "thresholds_from_config", "known_keys",
    "SITE_KEYS", "GLOBAL_KEYS", "OPTIONAL_KEYS", "SWEEPABLE",
    "MODE_LABELS", "MODE_INDEX", "HBAR", "BOLTZMANN",
    # model construction
    "LinearModel", "NoiseSpec", "SemiclassicalState", "thermal_occupancy",
    "build_noise", "build_drift", "build_diffusion", "build_model",
    "solve_semiclassical", "rabi_for_target_G",
    # linear algebra
    "eigenvalues", "spectral_abscissa", "solve_lyapunov", "rk4_step",
    "propagate_covariance",
    # steady state and entanglement
    "CovarianceMatrix", "EntanglementReport", "steady_covariance",
    "reduce_pair", "reduce_modes", "partial_transpose",
    "symplectic_eigenvalues", "log_negativity", "tmsv_covariance",
    "full_report",
    # oracles
    "OracleConfig", "rescale_damping", "steady_by_integration",
    "pre_rwa_drift", "integrate_pre_rwa",
    # sweeps
    "Axis", "SweepSpec", "ResultRow", "spec_from_config", "run_point",
    "run_sweep", "find_critical_temperature", "write_csv", "write_json",
    # validity
    "ValidityThresholds", "ValidityReport", "audit", "spin_count",
    # errors
    "MagnomechError", "StabilityError", "NumericsError", "ConvergenceError",
    "DivergenceError", "BudgetError", "FixedPointError", "SearchError",
    "BracketError", "ConfigError",
]
