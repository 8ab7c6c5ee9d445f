"""Logical qubit encodings and gates."""
from app.codes.encoding import (
    CodeRegister,
    EncodingKind,
    LogicalQubit,
    code_basis,
    encode,
    encode_state,
    lambda_qubit,
    logical_x_support,
    phi_block,
)
from app.codes.gates import (
    code_space_matrix,
    entangle_k,
    hadamard_rus,
    leakage,
    locc_parity_test,
    logical_x,
    logical_z,
    measure_logical_x,
    measure_logical_z,
    phase_gate,
)

__all__ = [
    "CodeRegister",
    "EncodingKind",
    "LogicalQubit",
    "code_basis",
    "code_space_matrix",
    "encode",
    "encode_state",
    "entangle_k",
    "hadamard_rus",
    "lambda_qubit",
    "leakage",
    "locc_parity_test",
    "logical_x",
    "logical_x_support",
    "logical_z",
    "measure_logical_x",
    "measure_logical_z",
    "phase_gate",
    "phi_block",
]
