"""
Logical Gates and Measurements
논리 X/Z, 위상 게이트, 얽힘 게이트 K, 반복-성공(RUS) 하다마드, LOCC 판별

LambdaOnly and PhiPair logical X is the W_Λ chain on the X path, so X-basis
gates act diagonally through the sign of that chain's holonomy. Strong
logical X also carries U at both ends of the X path (with a sign so that
X|0⟩ = |1⟩ exactly) and is applied as a general operator.
"""
from typing import Callable, List, Sequence, Tuple

import numpy as np

from app.codes.encoding import (
    CodeRegister,
    EncodingKind,
    LogicalQubit,
    code_basis,
    encode,
    prepared_branch,
)
from app.group.s3 import CHARACTER_TABLE, GroupElement, Irrep
from app.model.anyons import u_vertex, w_lambda_chain
from app.model.quantum_double import (
    ChargeType,
    ground_state,
    branch_probabilities,
    charge_branches,
    holonomy_codes,
    measure_Tt,
    vertex_op,
)
from app.state.state_vector import (
    RngLike,
    StateVector,
    apply_key_function,
    as_generator,
    inner_product,
    sample_branch,
)
from app.utils.errors import CorruptionError, EncodingError
from app.utils.logger import logger

RegisterOp = Callable[[CodeRegister], CodeRegister]


# -- logical X ----------------------------------------------------------------


def x_signs(state: StateVector, qubit: LogicalQubit) -> np.ndarray:
    """키별 X 사슬 부호 sign(H_C12) ∈ {+1, -1}"""
    holonomy = holonomy_codes(state.keys, qubit.x_path.steps)
    return CHARACTER_TABLE[Irrep.SIGN][holonomy].real


def x_action(state: StateVector, qubit: LogicalQubit) -> StateVector:
    state = w_lambda_chain(state, qubit.x_path)
    if qubit.kind is EncodingKind.STRONG:
        # U(v1)U(v2) takes the standard pairs to minus the primed pairs
        state = -1 * u_vertex(u_vertex(state, qubit.v1), qubit.v2)
    return state


def logical_x(reg: CodeRegister, q: int) -> CodeRegister:
    qubit = reg.require_encoded(q)
    reg.state = x_action(reg.state, qubit)
    return reg


def _x_diagonal(qubit: LogicalQubit) -> bool:
    return qubit.kind is not EncodingKind.STRONG


def _x_eigen_branches(state: StateVector, qubit: LogicalQubit) -> List[Tuple[int, StateVector]]:
    flipped = x_action(state, qubit)
    return [(1, 0.5 * (state + flipped)), (-1, 0.5 * (state - flipped))]


# -- logical Z ----------------------------------------------------------------


def logical_z(reg: CodeRegister, q: int) -> CodeRegister:
    """국소 T_t 로 구현한 논리 Z (LambdaOnly: v1, PhiPair: v1 과 v4)"""
    qubit = reg.require_encoded(q)
    if qubit.kind is EncodingKind.STRONG:
        raise EncodingError("Strong qubits have no local logical Z")
    targets = (qubit.v1,) if qubit.kind is EncodingKind.LAMBDA_ONLY else (qubit.v1, qubit.v4)
    state = reg.state
    for v in targets:
        state = vertex_op(state, v, GroupElement.T)
    reg.state = state
    return reg


def flavor_branches(reg: CodeRegister, q: int) -> List[Tuple[ChargeType, StateVector]]:
    """Strong 큐비트의 쌍 경로 flavor 사영: 표준 -> |0⟩, primed -> |1⟩, 나머지 -> Φ

    Vertex-region fusion sees the trivial channel for both Strong states (the
    X chain adds a Λ to the primed pair at v1), so the readout projects onto
    the two encoded states instead. Needs every other qubit unencoded.
    """
    qubit = reg.qubit(q)
    others = [i for i, flag in enumerate(reg.encoded) if flag and i != q]
    if others:
        raise EncodingError(f"Strong readout of qubit {q} needs qubits {others} to be unencoded")
    state = reg.state
    vacuum = ground_state(reg.lattice)
    branches = []
    remainder = state
    for label, bit in ((ChargeType.TRIVIAL, 0), (ChargeType.LAMBDA, 1)):
        basis = prepared_branch(vacuum, qubit, bit)
        projected = inner_product(basis, state) * basis
        branches.append((label, projected))
        remainder = remainder - projected
    branches.append((ChargeType.PHI, remainder))
    return branches


def logical_z_branches(reg: CodeRegister, q: int):
    """논리 Z 판독의 (전하, 확률, 사영 상태) 분기"""
    qubit = reg.require_encoded(q)
    if qubit.kind is EncodingKind.STRONG:
        branches = flavor_branches(reg, q)
    elif qubit.kind is EncodingKind.LAMBDA_ONLY:
        branches = charge_branches(reg.state, [qubit.v1])
    else:
        branches = charge_branches(reg.state, [qubit.v1, qubit.v4])
    return branch_probabilities(reg.state, branches)


def logical_bit(charge: ChargeType, probability: float, q: int) -> int:
    if charge is ChargeType.PHI:
        logger.warning(f"Qubit {q} read out a Phi fusion channel (p={probability:.4f})")
        raise CorruptionError(f"Qubit {q} fusion channel is Phi; code state corrupted", probability)
    return 0 if charge is ChargeType.TRIVIAL else 1


def measure_logical_z(reg: CodeRegister, q: int, rng: RngLike = None) -> Tuple[int, CodeRegister]:
    """융합 채널로 논리 Z 판독: 자명 -> 0, Λ -> 1, Φ -> CorruptionError"""
    result = sample_branch(logical_z_branches(reg, q), rng)
    reg.state = result.state
    return logical_bit(result.label, result.probability, q), reg


def logical_x_branches(reg: CodeRegister, q: int):
    qubit = reg.require_encoded(q)
    return branch_probabilities(reg.state, _x_eigen_branches(reg.state, qubit))


def measure_logical_x(reg: CodeRegister, q: int, rng: RngLike = None) -> Tuple[int, CodeRegister]:
    """(I ± X)/2 사영 측정, ±1 반환"""
    result = sample_branch(logical_x_branches(reg, q), rng)
    reg.state = result.state
    return int(result.label), reg


# -- X-basis gates ------------------------------------------------------------


def phase_gate(reg: CodeRegister, q: int, theta: float) -> CodeRegister:
    """U_θ = P_+ + e^{iθ} P_-  (X 기저 위상 게이트)"""
    qubit = reg.require_encoded(q)
    phase = np.exp(1j * theta)
    if _x_diagonal(qubit):
        signs = x_signs(reg.state, qubit)
        reg.state = apply_key_function(reg.state, np.where(signs > 0, 1.0 + 0j, phase))
        return reg
    flipped = x_action(reg.state, qubit)
    reg.state = 0.5 * (1 + phase) * reg.state + 0.5 * (1 - phase) * flipped
    return reg


def entangle_k(reg: CodeRegister, qa: int, qb: int) -> CodeRegister:
    """K = (I + X_a + X_b - X_a X_b)/2: 두 X 부호가 모두 -1 일 때만 -1"""
    if qa == qb:
        raise EncodingError("K needs two distinct qubits")
    a = reg.require_encoded(qa)
    b = reg.require_encoded(qb)
    state = reg.state
    if _x_diagonal(a) and _x_diagonal(b):
        both = (x_signs(state, a) < 0) & (x_signs(state, b) < 0)
        reg.state = apply_key_function(state, np.where(both, -1.0, 1.0))
        return reg
    xa = x_action(state, a)
    xb = x_action(state, b)
    xab = x_action(xa, b)
    reg.state = 0.5 * (state + xa + xb - xab)
    return reg


def hadamard_round(reg: CodeRegister, qa: int, qb: int) -> CodeRegister:
    """|ψ⟩_a |0⟩_b 에 K_{a,b} 적용 (측정 전 단계)"""
    a = reg.require_encoded(qa)
    b = reg.qubit(qb)
    if EncodingKind.STRONG in (a.kind, b.kind):
        raise EncodingError("Hadamard by repeat-until-success needs LambdaOnly or PhiPair qubits")
    if reg.encoded[qb] or not reg.support_in_ground_state(qb):
        raise EncodingError(f"Auxiliary qubit {qb} must start in the ground state")
    encode(reg, qb, 0)
    return entangle_k(reg, qa, qb)


def finish_hadamard(reg: CodeRegister, qb: int, outcome: int) -> int:
    """측정 결과 1 의 부산물 Z 를 제거하고 사용한 라운드 수 반환"""
    if outcome == 0:
        return 1
    logical_z(reg, qb)
    return 2


def hadamard_rus(reg: CodeRegister, qa: int, qb: int, rng: RngLike = None) -> Tuple[int, CodeRegister]:
    """보조 큐비트 qb 로 논리 하다마드를 구현하고 사용한 라운드 수를 반환

    One round prepares qb in |0⟩, applies K and reads qa in the Z basis.
    Outcome 0 leaves H|ψ⟩ on qb; outcome 1 leaves Z H|ψ⟩ and a second round
    applies the local logical Z on qb. The logical state then lives on qb.
    """
    hadamard_round(reg, qa, qb)
    outcome, reg = measure_logical_z(reg, qa, as_generator(rng))
    rounds = finish_hadamard(reg, qb, outcome)
    logger.debug(f"Hadamard from qubit {qa} onto {qb}: outcome {outcome}, {rounds} round(s)")
    return rounds, reg


# -- distinguishability -------------------------------------------------------


def locc_parity_test(reg: CodeRegister, q: int, rng: RngLike = None) -> Tuple[int, int, CodeRegister]:
    """T_t(v1)T_t(v4) 와 T_t(v2)T_t(v3) 를 국소 측정해 곱한 두 홀짝"""
    qubit = reg.require_encoded(q)
    if not qubit.kind.uses_phi_pairs:
        raise EncodingError("LOCC parity test needs a four-anyon block")
    generator = as_generator(rng)
    state = reg.state
    parities = []
    for pair in ((qubit.v1, qubit.v4), (qubit.v2, qubit.v3)):
        parity = 1
        for v in pair:
            sign, state = measure_Tt(state, v, generator)
            parity *= sign
        parities.append(parity)
    reg.state = state
    return parities[0], parities[1], reg


# -- code-space analysis ------------------------------------------------------


def code_space_matrix(reg: CodeRegister, op: RegisterOp) -> np.ndarray:
    """M[i, j] = ⟨i| op |j⟩, 비트열 순서의 인코딩 기저 위에서"""
    basis = code_basis(reg.lattice, reg.qubits)
    dim = len(basis)
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for j, column in enumerate(basis):
        work = CodeRegister(reg.lattice, reg.qubits, state=column)
        work.encoded = [True] * len(reg.qubits)
        image = op(work).state
        for i, row in enumerate(basis):
            matrix[i, j] = inner_product(row, image)
    return matrix


def leakage(state: StateVector, basis: Sequence[StateVector]) -> float:
    """코드 공간 밖 성분의 상대 노름"""
    residual = state
    for vector in basis:
        residual = residual - inner_product(vector, state) * vector
    return residual.norm() / state.norm()
