"""Lindblad simulator for thermally driven two-photon damping.

A two-level system longitudinally coupled to a resonator, with spectrally
filtered thermal baths: master-equation builders (full sideband-resolved,
engineered-bath, and resonator-only reduced), steady states, stiff time
propagation, quantum-regression two-time correlations, photon statistics,
and the closed-form strong-cooling oracles.
"""

__version__ = "0.1.0"

from .fokker_planck import DriftDiffusion, PhasePoint, fp_drift_diffusion, fp_limit_populations
from .liouvillian import (
    FilterMode,
    Liouvillian,
    MEVariant,
    ReducedRates,
    build_filtered_me,
    build_full_me,
    build_reduced_me,
    reduced_rates,
    tls_steady_sigma_z,
)
from .model import (
    BathLabel,
    BathSpec,
    FilterSpec,
    LambShiftMode,
    ModelParams,
    Variant,
    bose_occupation,
    filtered_spectrum,
    hamiltonian_r_r,
    hamiltonian_tls_r,
    lamb_shift,
    polaron_diagonal_hamiltonian,
    polaron_unitary,
    resonator_temperature_for_nbar,
    spectral_response,
)
from .observables import (
    PhotonStatistics,
    g2_zero,
    mean_occupation,
    number_distribution,
    photon_statistics,
    to_lab_frame,
)
from .operators import (
    DensityMatrix,
    Operator,
    SpaceSignature,
    dissipator_apply,
    fock_annihilation,
    fock_number,
    pauli_ops,
    tensor,
    vectorize_superop,
)
from .solvers import (
    CorrelationSeries,
    DegenerateSteadyStateError,
    StiffIntegrationError,
    Trajectory,
    converge_in_n_max,
    default_tau_grid,
    propagate,
    steady_state,
    two_time_correlation,
)

__all__ = [
    "__version__",
    "BathLabel",
    "BathSpec",
    "CorrelationSeries",
    "DegenerateSteadyStateError",
    "DensityMatrix",
    "DriftDiffusion",
    "FilterMode",
    "FilterSpec",
    "LambShiftMode",
    "Liouvillian",
    "MEVariant",
    "ModelParams",
    "Operator",
    "PhasePoint",
    "PhotonStatistics",
    "ReducedRates",
    "SpaceSignature",
    "StiffIntegrationError",
    "Trajectory",
    "Variant",
    "bose_occupation",
    "build_filtered_me",
    "build_full_me",
    "build_reduced_me",
    "converge_in_n_max",
    "default_tau_grid",
    "dissipator_apply",
    "filtered_spectrum",
    "fock_annihilation",
    "fock_number",
    "fp_drift_diffusion",
    "fp_limit_populations",
    "g2_zero",
    "hamiltonian_r_r",
    "hamiltonian_tls_r",
    "lamb_shift",
    "mean_occupation",
    "number_distribution",
    "pauli_ops",
    "photon_statistics",
    "polaron_diagonal_hamiltonian",
    "polaron_unitary",
    "propagate",
    "reduced_rates",
    "resonator_temperature_for_nbar",
    "spectral_response",
    "steady_state",
    "tensor",
    "tls_steady_sigma_z",
    "to_lab_frame",
    "two_time_correlation",
    "vectorize_superop",
]
