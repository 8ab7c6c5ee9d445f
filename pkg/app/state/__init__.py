"""Sparse state-vector engine and dense reference backend."""
from app.state.state_vector import (
    MeasurementResult,
    SpinDiagonalOp,
    StateVector,
    apply_diagonal,
    apply_edge_permutation,
    apply_key_function,
    apply_left_mul,
    apply_right_mul,
    as_generator,
    basis_state,
    born_probabilities,
    combine,
    config_string,
    fidelity,
    identity_config,
    inner_product,
    measure,
    measure_partition,
    pack_config,
    renormalize,
    sample_branch,
    unpack_key,
)

__all__ = [
    "MeasurementResult",
    "SpinDiagonalOp",
    "StateVector",
    "apply_diagonal",
    "apply_edge_permutation",
    "apply_key_function",
    "apply_left_mul",
    "apply_right_mul",
    "as_generator",
    "basis_state",
    "born_probabilities",
    "combine",
    "config_string",
    "fidelity",
    "identity_config",
    "inner_product",
    "measure",
    "measure_partition",
    "pack_config",
    "renormalize",
    "sample_branch",
    "unpack_key",
]
