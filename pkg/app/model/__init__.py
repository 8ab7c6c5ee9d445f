"""D(S3) operator layer and anyon operations."""
from app.model.anyons import (
    AnyonPair,
    ChainFlavor,
    CreationKind,
    apply_w,
    pair_charge_measure,
    pair_charge_probabilities,
    u_vertex,
    w_lambda_chain,
    w_phi_chain,
)
from app.model.quantum_double import (
    ChargeType,
    ModifiedSyndrome,
    Syndrome,
    charge_project,
    energy,
    flux_trivial_project,
    ground_state,
    measure_modified_syndrome,
    measure_syndrome,
    measure_Tt,
    modified_lambda_project,
    vertex_charge_probabilities,
    vertex_op,
)

__all__ = [
    "AnyonPair",
    "ChainFlavor",
    "ChargeType",
    "CreationKind",
    "ModifiedSyndrome",
    "Syndrome",
    "apply_w",
    "charge_project",
    "energy",
    "flux_trivial_project",
    "ground_state",
    "measure_modified_syndrome",
    "measure_syndrome",
    "measure_Tt",
    "modified_lambda_project",
    "pair_charge_measure",
    "pair_charge_probabilities",
    "u_vertex",
    "vertex_charge_probabilities",
    "vertex_op",
    "w_lambda_chain",
    "w_phi_chain",
]
