"""Collective spin-boson model with matter interactions: polariton modes,
classical energy surfaces, geometric phases, and a finite-N oracle."""

from adicke.berry import (
    GeometricPhases,
    criticality_slopes,
    first_order_signature,
    geometric_phases,
    kink_detected,
)
from adicke.exact import (
    BasisSpec,
    ExactSpectrum,
    build_hamiltonian,
    converged_spectrum,
    hp_convergence_report,
)
from adicke.model import (
    DerivedScales,
    ModelParams,
    PhaseLabel,
    classify_phase,
    derive_scales,
    order_parameters,
    stationarity_residuals,
)
from adicke.modes import (
    ModeSpectrum,
    NormalModeFactors,
    SuperradiantIntermediates,
    critical_amplitude_gap,
    ground_state_energy,
    ground_state_energy_closed,
    mode_branches,
    normal_mode_factors,
    roton_asymptote,
    superradiant_intermediates,
    suppression_window,
)
from adicke.surface import (
    ExtremaResult,
    ExtremumPoint,
    PhaseSpacePoint,
    SearchConfig,
    SurfacePoint,
    classical_energy,
    critical_coupling_from_surface,
    find_extrema,
    minimum_ring_variance,
    surface_energy,
    surface_gradient_hessian,
)
from adicke.sweep import (
    BERRY_HEADER,
    EXTREMA_HEADER,
    MODES_HEADER,
    OBSERVABLES_HEADER,
    REPORT_HEADER,
    SPECTRUM_HEADER,
    SURFACE_HEADER,
    ConfigError,
    SweepAxis,
    SweepConfig,
    load_config,
    preset_config,
    run_berry_sweep,
    run_exact_spectrum,
    run_modes_sweep,
    run_oracle_report,
    run_surface_grid,
)

__all__ = [
    "BERRY_HEADER",
    "BasisSpec",
    "ConfigError",
    "EXTREMA_HEADER",
    "MODES_HEADER",
    "OBSERVABLES_HEADER",
    "REPORT_HEADER",
    "SPECTRUM_HEADER",
    "SURFACE_HEADER",
    "DerivedScales",
    "ExactSpectrum",
    "ExtremaResult",
    "ExtremumPoint",
    "GeometricPhases",
    "ModeSpectrum",
    "ModelParams",
    "NormalModeFactors",
    "PhaseLabel",
    "PhaseSpacePoint",
    "SearchConfig",
    "SuperradiantIntermediates",
    "SurfacePoint",
    "SweepAxis",
    "SweepConfig",
    "build_hamiltonian",
    "classical_energy",
    "classify_phase",
    "converged_spectrum",
    "critical_amplitude_gap",
    "critical_coupling_from_surface",
    "criticality_slopes",
    "derive_scales",
    "find_extrema",
    "first_order_signature",
    "geometric_phases",
    "ground_state_energy",
    "ground_state_energy_closed",
    "hp_convergence_report",
    "kink_detected",
    "load_config",
    "minimum_ring_variance",
    "mode_branches",
    "normal_mode_factors",
    "order_parameters",
    "preset_config",
    "roton_asymptote",
    "run_berry_sweep",
    "run_exact_spectrum",
    "run_modes_sweep",
    "run_oracle_report",
    "run_surface_grid",
    "stationarity_residuals",
    "superradiant_intermediates",
    "suppression_window",
    "surface_energy",
    "surface_gradient_hessian",
]

__version__ = "0.1.0"
