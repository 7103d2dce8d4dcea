"""Spectra, exceptional points and entanglement dynamics of two coupled
dissipative qubits. Thin wrapper over the C++ core."""

from ._core import (
    ArgumentError,
    BranchError,
    DimensionError,
    EpDegenerateError,
    ModelSpec,
    analytic_evolution,
    bell_projection,
    build_collapse_ops,
    build_effective_h,
    build_nodrive_h2,
    build_passive_h,
    build_rabi_h,
    classify_dynamics,
    classify_phase,
    concurrence_mixed,
    concurrence_pure,
    eigensystem,
    eigenstate_concurrence_sweep,
    energy_gap,
    ep_order,
    evolve_density,
    evolve_lindblad,
    evolve_pure_eigen,
    find_eps,
    fit_envelope,
    nodrive_eigen_concurrence,
    perturbed_eigenvalues,
    shift_to_pt,
    steady_state_time,
    sweep_spectrum,
)

__all__ = [
    "ArgumentError",
    "BranchError",
    "DimensionError",
    "EpDegenerateError",
    "ModelSpec",
    "analytic_evolution",
    "bell_projection",
    "build_collapse_ops",
    "build_effective_h",
    "build_nodrive_h2",
    "build_passive_h",
    "build_rabi_h",
    "classify_dynamics",
    "classify_phase",
    "concurrence_mixed",
    "concurrence_pure",
    "eigensystem",
    "eigenstate_concurrence_sweep",
    "energy_gap",
    "ep_order",
    "evolve_density",
    "evolve_lindblad",
    "evolve_pure_eigen",
    "find_eps",
    "fit_envelope",
    "nodrive_eigen_concurrence",
    "perturbed_eigenvalues",
    "shift_to_pt",
    "steady_state_time",
    "sweep_spectrum",
]
