"""Measurement-driven single-temperature quantum heat engine with a Heisenberg spin pair."""

from .analysis import (
    LocalWorkResult,
    RefrigeratorResult,
    coefficient_of_performance,
    effective_cold_temperature,
    local_works,
)
from .closed_forms import ClosedFormId, advantage_cutoff, evaluate, negative_work_threshold_h1
from .cycle import (
    CyclePoint,
    CycleResult,
    EfficiencyUndefinedError,
    WorkDecomposition,
    run_cycle,
    symmetrized_energetics,
    work_decomposition,
)
from .linalg import SpectralDecomposition, hermitian_eigendecompose, kron, partial_trace
from .measurement import (
    MeasurementScheme,
    apply_nonselective,
    local_projective_scheme,
    qubit_sic_scheme,
    scheme_from_labels,
    transition_matrix,
)
from .medium import WorkingMedium, build_hamiltonian, spectrum, validate_against_table
from .spin import SpinValue, spin_direction_operator, spin_operators
from .thermal import ThermalState, gibbs_state

__version__ = "0.1.0"

__all__ = [
    "ClosedFormId",
    "CyclePoint",
    "CycleResult",
    "EfficiencyUndefinedError",
    "LocalWorkResult",
    "MeasurementScheme",
    "RefrigeratorResult",
    "SpectralDecomposition",
    "SpinValue",
    "ThermalState",
    "WorkDecomposition",
    "WorkingMedium",
    "advantage_cutoff",
    "apply_nonselective",
    "build_hamiltonian",
    "coefficient_of_performance",
    "effective_cold_temperature",
    "evaluate",
    "gibbs_state",
    "hermitian_eigendecompose",
    "kron",
    "local_projective_scheme",
    "local_works",
    "negative_work_threshold_h1",
    "partial_trace",
    "qubit_sic_scheme",
    "run_cycle",
    "scheme_from_labels",
    "spectrum",
    "spin_direction_operator",
    "spin_operators",
    "symmetrized_energetics",
    "transition_matrix",
    "validate_against_table",
    "work_decomposition",
]
