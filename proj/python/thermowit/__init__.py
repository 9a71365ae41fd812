"""Optimal heat exchange with a quantum memory and heat-based witnesses."""

from ._thermowit import (
    average_energy,
    beta_c_asymptotic,
    binary_entropy,
    coherent_input_state,
    conditional_entropy,
    dephase,
    f_function,
    find_beta_roots,
    free_energy,
    gibbs_state,
    heat_bounds,
    heat_bounds_oracle,
    heat_bounds_scalar,
    hermitian_spectrum,
    ho_constraint_objective,
    incoh_envelope,
    isotropic_state,
    ladder_hamiltonian,
    lambda_crt,
    log_partition,
    memory_fixed_point,
    mutual_information,
    partial_trace,
    random_density_matrix,
    random_separable_state,
    rel_entropy_of_coherence,
    relative_entropy,
    sep_envelope,
    tavis_cummings,
    tensor_product,
    trace_distance,
    verdict,
    version,
    von_neumann_entropy,
    werner_state,
)

__version__ = version()

__all__ = [
    "average_energy",
    "beta_c_asymptotic",
    "binary_entropy",
    "coherent_input_state",
    "conditional_entropy",
    "dephase",
    "f_function",
    "find_beta_roots",
    "free_energy",
    "gibbs_state",
    "heat_bounds",
    "heat_bounds_oracle",
    "heat_bounds_scalar",
    "hermitian_spectrum",
    "ho_constraint_objective",
    "incoh_envelope",
    "isotropic_state",
    "ladder_hamiltonian",
    "lambda_crt",
    "log_partition",
    "memory_fixed_point",
    "mutual_information",
    "partial_trace",
    "random_density_matrix",
    "random_separable_state",
    "rel_entropy_of_coherence",
    "relative_entropy",
    "sep_envelope",
    "tavis_cummings",
    "tensor_product",
    "trace_distance",
    "verdict",
    "version",
    "von_neumann_entropy",
    "werner_state",
]
