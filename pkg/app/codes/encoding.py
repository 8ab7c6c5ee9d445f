"""
Logical Qubit Encodings
Λ 단독, Φ 쌍, 강한(strong) 인코딩과 코드 레지스터

Vertex labels follow the four-anyon block: v1 and v4 form the first Φ pair
(path C14), v2 and v3 the second (path C23), and the X path C12 joins one
anyon of each pair. A LambdaOnly qubit uses v1, v2 and the X path only.
"""
from enum import Enum
from itertools import product
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from app.lattice.grid import Lattice, Path, incident_edges, path_between
from app.model.anyons import ChainFlavor, w_lambda_chain, w_phi_chain
from app.model.quantum_double import ChargeType, charge_project, ground_state
from app.state.state_vector import StateVector
from app.utils.errors import EncodingError
from app.utils.logger import logger

GROUND_TOLERANCE = 1e-9


class EncodingKind(str, Enum):
    LAMBDA_ONLY = "lambda"
    PHI_PAIR = "phipair"
    STRONG = "strong"

    @property
    def uses_phi_pairs(self) -> bool:
        return self is not EncodingKind.LAMBDA_ONLY


class LogicalQubit(BaseModel):
    """인코딩 종류와 구체적인 꼭짓점/경로를 묶는 기술자"""

    model_config = ConfigDict(frozen=True)

    kind: EncodingKind
    v1: int
    v2: int
    v3: Optional[int] = None
    v4: Optional[int] = None
    x_path: Path
    pair_a: Optional[Path] = None  # C14
    pair_b: Optional[Path] = None  # C23
    separation: int

    @model_validator(mode="after")
    def _check_geometry(self):
        if (self.x_path.start, self.x_path.end) != (self.v1, self.v2):
            raise EncodingError("X path must join v1 and v2")
        if not self.kind.uses_phi_pairs:
            if self.separation != len(self.x_path):
                raise EncodingError("LambdaOnly separation must equal the X path length")
            return self
        if None in (self.v3, self.v4, self.pair_a, self.pair_b):
            raise EncodingError(f"{self.kind.value} qubits need v3, v4 and both pair paths")
        if (self.pair_a.start, self.pair_a.end) != (self.v1, self.v4):
            raise EncodingError("Pair path C14 must join v1 and v4")
        if (self.pair_b.start, self.pair_b.end) != (self.v2, self.v3):
            raise EncodingError("Pair path C23 must join v2 and v3")
        if self.separation != len(self.pair_a):
            raise EncodingError("separation must equal the pair path length")
        return self

    @property
    def vertices(self) -> Tuple[int, ...]:
        if self.kind.uses_phi_pairs:
            return (self.v1, self.v2, self.v3, self.v4)
        return (self.v1, self.v2)

    @property
    def paths(self) -> Tuple[Path, ...]:
        if self.kind.uses_phi_pairs:
            return (self.pair_a, self.pair_b, self.x_path)
        return (self.x_path,)

    def support_edges(self) -> Set[int]:
        return {e for path in self.paths for e in path.edge_ids}


def lambda_qubit(lat: Lattice, v1: int, v2: int) -> LogicalQubit:
    x_path = path_between(lat, v1, v2)
    return LogicalQubit(
        kind=EncodingKind.LAMBDA_ONLY, v1=v1, v2=v2, x_path=x_path, separation=len(x_path)
    )


def phi_block(
    lat: Lattice,
    kind: EncodingKind = EncodingKind.PHI_PAIR,
    origin: Tuple[int, int] = (1, 0),
    pair_span: Tuple[int, int] = (0, 1),
    x_span: Tuple[int, int] = (-1, 0),
) -> LogicalQubit:
    """네 개의 Φ 블록: v1 = origin, v4 = v1 + pair_span, v2 = v1 + x_span, v3 = v2 + pair_span

    The defaults reproduce the unit block with v1 top-left and the labels
    running anticlockwise on a 2x2 lattice.
    """
    kind = EncodingKind(kind)
    if not kind.uses_phi_pairs:
        raise EncodingError("phi_block builds PhiPair or Strong qubits")
    r, c = origin
    v1 = lat.vertex_id(r, c)
    v4 = lat.vertex_id(r + pair_span[0], c + pair_span[1])
    v2 = lat.vertex_id(r + x_span[0], c + x_span[1])
    v3 = lat.vertex_id(r + x_span[0] + pair_span[0], c + x_span[1] + pair_span[1])
    pair_a = path_between(lat, v1, v4)
    return LogicalQubit(
        kind=kind,
        v1=v1,
        v2=v2,
        v3=v3,
        v4=v4,
        x_path=path_between(lat, v1, v2),
        pair_a=pair_a,
        pair_b=path_between(lat, v2, v3),
        separation=len(pair_a),
    )


def path_vertex_set(lat: Lattice, path: Path) -> Set[int]:
    vertices = {path.start, path.end}
    for e in path.edge_ids:
        vertices.update(lat.edge_vertices(e))
    return vertices


def qubit_support(lat: Lattice, qubit: LogicalQubit) -> Tuple[Set[int], Set[int]]:
    """(변 집합, 꼭짓점 집합)"""
    vertices: Set[int] = set(qubit.vertices)
    for path in qubit.paths:
        vertices |= path_vertex_set(lat, path)
    return qubit.support_edges(), vertices


def logical_x_support(lat: Lattice, qubit: LogicalQubit) -> Set[int]:
    """논리 X 가 작용하는 스핀(변) 집합"""
    edges = set(qubit.x_path.edge_ids)
    if qubit.kind is EncodingKind.STRONG:
        for v in (qubit.v1, qubit.v2):
            edges.update(e for e, _ in incident_edges(lat, v))
    return edges


class CodeRegister:
    """격자, 서로 겹치지 않는 논리 큐비트 목록, 공유 상태 벡터"""

    def __init__(self, lattice: Lattice, qubits: Sequence[LogicalQubit], state: Optional[StateVector] = None):
        self.lattice = lattice
        self.qubits: List[LogicalQubit] = list(qubits)
        self._check_disjoint()
        self.state = ground_state(lattice) if state is None else state
        self.encoded: List[bool] = [False] * len(self.qubits)

    def _check_disjoint(self) -> None:
        seen_edges: Set[int] = set()
        seen_vertices: Set[int] = set()
        for index, qubit in enumerate(self.qubits):
            edges, vertices = qubit_support(self.lattice, qubit)
            if edges & seen_edges or vertices & seen_vertices:
                raise EncodingError(f"Qubit {index} overlaps the support of an earlier qubit")
            seen_edges |= edges
            seen_vertices |= vertices

    def copy(self) -> "CodeRegister":
        clone = CodeRegister.__new__(CodeRegister)
        clone.lattice = self.lattice
        clone.qubits = list(self.qubits)
        clone.state = self.state
        clone.encoded = list(self.encoded)
        return clone

    def qubit(self, q: int) -> LogicalQubit:
        if not 0 <= q < len(self.qubits):
            raise EncodingError(f"Register has no qubit {q}")
        return self.qubits[q]

    def require_encoded(self, q: int) -> LogicalQubit:
        qubit = self.qubit(q)
        if not self.encoded[q]:
            raise EncodingError(f"Qubit {q} is not encoded")
        return qubit

    def support_in_ground_state(self, q: int) -> bool:
        """큐비트 지지 영역의 모든 꼭짓점이 자명 전하인지 확인"""
        _, vertices = qubit_support(self.lattice, self.qubit(q))
        norm = self.state.norm() ** 2
        return all(
            charge_project(self.state, v, ChargeType.TRIVIAL).norm() ** 2 >= (1 - GROUND_TOLERANCE) * norm
            for v in sorted(vertices)
        )


def encoding_ops(qubit: LogicalQubit, bit: int):
    """비트 값에 해당하는 상태 준비 연산 목록 (순서대로 적용)"""
    ops = []
    if qubit.kind.uses_phi_pairs:
        flavor = ChainFlavor.PRIMED if (qubit.kind is EncodingKind.STRONG and bit) else ChainFlavor.STANDARD
        ops.append(lambda s: w_phi_chain(s, qubit.pair_a, flavor))
        ops.append(lambda s: w_phi_chain(s, qubit.pair_b, flavor))
    if bit:
        ops.append(lambda s: w_lambda_chain(s, qubit.x_path))
    return ops


def prepared_branch(state: StateVector, qubit: LogicalQubit, bit: int) -> StateVector:
    for op in encoding_ops(qubit, bit):
        state = op(state)
    return state.normalize()


def encode(reg: CodeRegister, q: int, bit: int) -> CodeRegister:
    """|bit⟩ 을 큐비트 q 에 준비"""
    return encode_state(reg, q, (1.0, 0.0) if bit == 0 else (0.0, 1.0))


def encode_state(reg: CodeRegister, q: int, amplitudes: Tuple[complex, complex]) -> CodeRegister:
    """α|0⟩ + β|1⟩ 준비"""
    qubit = reg.qubit(q)
    if reg.encoded[q] or not reg.support_in_ground_state(q):
        raise EncodingError(f"Support of qubit {q} is not in the ground state")
    alpha, beta = amplitudes
    weight = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    if weight <= 1e-12:
        raise EncodingError("Logical amplitudes must not both vanish")
    alpha, beta = alpha / weight, beta / weight
    state = None
    for bit, amplitude in ((0, alpha), (1, beta)):
        if amplitude == 0:
            continue
        branch = amplitude * prepared_branch(reg.state, qubit, bit)
        state = branch if state is None else state + branch
    reg.state = state.normalize()
    reg.encoded[q] = True
    logger.debug(f"Encoded qubit {q} ({qubit.kind.value}) with amplitudes ({alpha:.4g}, {beta:.4g})")
    return reg


def code_basis(lattice: Lattice, qubits: Sequence[LogicalQubit]) -> List[StateVector]:
    """비트열 순서(첫 큐비트가 최상위)의 인코딩된 기저 상태"""
    basis = []
    for bits in product((0, 1), repeat=len(qubits)):
        reg = CodeRegister(lattice, qubits)
        for q, bit in enumerate(bits):
            encode(reg, q, bit)
        basis.append(reg.state)
    return basis
