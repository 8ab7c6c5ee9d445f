"""
Anyon Creation and Fusion
전하 생성 연산자(단일 스핀/사슬), U(v) 회전, 쌍 융합 채널 측정
"""
from enum import Enum
from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from app.group.s3 import CHARACTER_TABLE, OMEGA, Irrep
from app.lattice.grid import Path
from app.model.quantum_double import (
    ChargeType,
    branch_probabilities,
    charge_branches,
    holonomy_codes,
    vertex_combination,
)
from app.state.state_vector import (
    RngLike,
    SpinDiagonalOp,
    StateVector,
    apply_diagonal,
    apply_key_function,
    edge_digits,
    sample_branch,
)
from app.utils.errors import LatticeError, StateError
from app.utils.logger import logger


class CreationKind(str, Enum):
    W_LAMBDA = "w_lambda"
    W_PHI = "w_phi"
    W_PHI_PRIME = "w_phi_prime"

    @property
    def table(self) -> Tuple[complex, ...]:
        return CREATION_TABLES[self]


CREATION_TABLES: Dict[CreationKind, Tuple[complex, ...]] = {
    CreationKind.W_LAMBDA: (1, 1, 1, -1, -1, -1),
    CreationKind.W_PHI: (2, -1, -1, 0, 0, 0),
    CreationKind.W_PHI_PRIME: (0, 1, -1, 0, 0, 0),
}


class ChainFlavor(str, Enum):
    STANDARD = "standard"
    PRIMED = "primed"


def _rotation_weights(weight) -> np.ndarray:
    """c^k (k = 0, 1, 2) 에 weight(k) 를, 반사에는 0 을 주는 8칸 테이블"""
    table = np.zeros(8, dtype=np.complex128)
    for k in range(3):
        table[k] = weight(k)
    return table


# Σ_{H = c^k} (ω^k + ω^{-k}) -> (2, -1, -1) on rotations
STANDARD_WEIGHTS = _rotation_weights(lambda k: OMEGA**k + OMEGA ** (-k))
# i (ω^k - ω^{-k}) / (-√3) -> (0, 1, -1) on rotations
PRIMED_WEIGHTS = _rotation_weights(lambda k: 1j * (OMEGA**k - OMEGA ** (-k)) / (-np.sqrt(3)))

U_COEFFICIENTS = (1 / 3, -2 / 3 * OMEGA, -2 / 3 * OMEGA**2, 0, 0, 0)


class AnyonPair(BaseModel):
    """경로 양 끝에 생성된 전하 쌍"""

    model_config = ConfigDict(frozen=True)

    kind: ChargeType
    v_left: int
    v_right: int
    path: Path
    flavor: ChainFlavor = ChainFlavor.STANDARD

    @model_validator(mode="after")
    def _endpoints_match(self):
        if (self.path.start, self.path.end) != (self.v_left, self.v_right):
            raise LatticeError("AnyonPair endpoints must match its creation path")
        return self


def _nonzero(state: StateVector, what: str) -> StateVector:
    if state.is_zero():
        raise StateError(f"{what} annihilated the state (input orthogonal to its support)")
    return state


def apply_w(s: StateVector, kind: CreationKind, e: int) -> StateVector:
    """단일 스핀 생성 연산자, 결과는 비정규화"""
    kind = CreationKind(kind)
    return _nonzero(apply_diagonal(s, SpinDiagonalOp(kind.table, e)), kind.value)


def _check_path(s: StateVector, path: Path) -> None:
    lat = s.lattice
    for e, _ in path.steps:
        lat.check_edge(e)


def w_lambda_chain(s: StateVector, path: Path) -> StateVector:
    """경로 위 모든 스핀에 W_Λ"""
    _check_path(s, path)
    sign = CHARACTER_TABLE[Irrep.SIGN]
    weights = np.ones(len(s), dtype=np.float64)
    for e in path.edge_ids:
        digits = edge_digits(s.keys, e)
        weights = weights * sign[digits]
    return apply_key_function(s, weights)


def chain_weights(flavor: ChainFlavor) -> np.ndarray:
    return STANDARD_WEIGHTS if ChainFlavor(flavor) is ChainFlavor.STANDARD else PRIMED_WEIGHTS


def w_phi_chain(s: StateVector, path: Path, flavor: ChainFlavor = ChainFlavor.STANDARD) -> StateVector:
    """경로 홀로노미 H 에 대한 대각 가중치 w(H); 결과는 비정규화"""
    _check_path(s, path)
    holonomy = holonomy_codes(s.keys, path.steps)
    weights = chain_weights(flavor)[holonomy]
    return _nonzero(apply_key_function(s, weights), f"W_Phi chain ({ChainFlavor(flavor).value})")


def holonomy(s: StateVector, path: Path) -> np.ndarray:
    """각 기저 키에 대한 경로 홀로노미 코드"""
    return holonomy_codes(s.keys, path.steps)


def u_vertex(s: StateVector, v: int) -> StateVector:
    """U(v) = T_e/3 - (2/3)[ω T_c + ω² T_{c²}]"""
    s.lattice.check_vertex(v)
    return vertex_combination(s, [v], U_COEFFICIENTS)


def pair_charge_probabilities(s: StateVector, v1: int, v2: int) -> Dict[ChargeType, float]:
    """두 꼭짓점 영역의 융합 채널 확률 (사영 노름으로 정확히 계산)"""
    if v1 == v2:
        raise LatticeError("Pair measurement needs two distinct vertices")
    branches = branch_probabilities(s, charge_branches(s, [v1, v2]))
    return {label: p for label, p, _ in branches}


def pair_charge_measure(
    s: StateVector, v1: int, v2: int, rng: RngLike = None
) -> Tuple[ChargeType, float, StateVector]:
    """P_A(v1 ∪ v2) = (dim_A/6) Σ_g χ_A(g) T_g(v1) T_g(v2) 로 융합 채널 측정"""
    if v1 == v2:
        raise LatticeError("Pair measurement needs two distinct vertices")
    branches = branch_probabilities(s, charge_branches(s, [v1, v2]))
    result = sample_branch(branches, rng)
    logger.debug(f"Fusion of ({v1}, {v2}) -> {result.label.value} (p={result.probability:.6f})")
    return result.label, result.probability, result.state
