"""
D(S3) Quantum Double Operators
꼭짓점 연산자, 전하/플럭스 사영, 바닥 상태, 에너지, 신드롬 측정

T_g(v) right-multiplies every edge whose head is v by g and left-multiplies
every edge whose tail is v by g^{-1}. With this convention
T_g(v) ∘ T_h(v) = T_{h·g}(v), and the ordered product along a path
(inverse for edges traversed against their orientation) transforms as
H -> g^{-1} H at the start vertex and H -> H g at the end vertex.
"""
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from app.group.s3 import (
    CHARACTER_TABLE,
    ELEMENTS,
    INV_TABLE,
    MUL_TABLE,
    GroupElement,
    Irrep,
    as_element,
    inverse,
)
from app.lattice.grid import Attachment, Direction, Lattice, incident_edges, plaquette_edges
from app.state.state_vector import (
    MeasurementResult,
    RngLike,
    StateVector,
    as_generator,
    basis_state,
    combine,
    edge_digits,
    identity_config,
    left_table,
    permuted_keys,
    right_table,
    sample_branch,
)
from app.utils.errors import StateError
from app.utils.logger import logger


class ChargeType(str, Enum):
    """꼭짓점 전하: 1, Λ, Φ"""

    TRIVIAL = "1"
    LAMBDA = "L"
    PHI = "P"

    @property
    def irrep(self) -> Irrep:
        return _IRREP_OF[self]

    @property
    def dimension(self) -> int:
        return self.irrep.dimension


_IRREP_OF: Dict[ChargeType, Irrep] = {
    ChargeType.TRIVIAL: Irrep.TRIVIAL,
    ChargeType.LAMBDA: Irrep.SIGN,
    ChargeType.PHI: Irrep.TWO_DIM,
}


def charge_coefficients(charge: ChargeType) -> np.ndarray:
    """P_A = (dim_A / 6) Σ_g χ_A(g) T_g 의 계수"""
    return charge.dimension / 6.0 * CHARACTER_TABLE[charge.irrep]


# -- vertex operators ---------------------------------------------------------


def vertex_tables(lat: Lattice, v: int, g: GroupElement) -> List[Tuple[int, np.ndarray]]:
    tables = []
    for e, attachment in incident_edges(lat, v):
        if attachment is Attachment.HEAD:
            tables.append((e, right_table(g)))
        else:
            tables.append((e, left_table(inverse(g))))
    return tables


def vertex_op(s: StateVector, v: int, g: Union[GroupElement, int, str]) -> StateVector:
    """T_g(v)"""
    tables = vertex_tables(s.lattice, v, as_element(g))
    return s.derive(permuted_keys(s, tables), s.amps)


def vertex_images(s: StateVector, vertices: Sequence[int]) -> List[np.ndarray]:
    """g 마다 Π_{v ∈ vertices} T_g(v) 를 적용한 키 배열 (ELEMENTS 순서)"""
    images = []
    for g in ELEMENTS:
        tables: List[Tuple[int, np.ndarray]] = []
        for v in vertices:
            tables.extend(vertex_tables(s.lattice, v, g))
        images.append(permuted_keys(s, tables))
    return images


def vertex_combination(
    s: StateVector,
    vertices: Sequence[int],
    coefficients: Sequence[complex],
    images: Optional[List[np.ndarray]] = None,
) -> StateVector:
    """Σ_g c_g Π_v T_g(v) |s⟩"""
    if images is None:
        for v in vertices:
            s.lattice.check_vertex(v)
        images = vertex_images(s, vertices)
    parts = [
        (keys, s.amps * coefficient)
        for keys, coefficient in zip(images, coefficients)
        if coefficient != 0
    ]
    return combine(s.lattice, parts, s.tolerance)


def charge_project(s: StateVector, v: int, charge: ChargeType) -> StateVector:
    """P_A(v), 비정규화 결과"""
    s.lattice.check_vertex(v)
    return vertex_combination(s, [v], charge_coefficients(ChargeType(charge)))


def charge_branches(s: StateVector, vertices: Sequence[int]) -> List[Tuple[ChargeType, StateVector]]:
    """영역 전하 사영 세 개를 한 번의 이미지 계산으로 구함"""
    for v in vertices:
        s.lattice.check_vertex(v)
    images = vertex_images(s, vertices)
    trivial = vertex_combination(s, vertices, charge_coefficients(ChargeType.TRIVIAL), images)
    sign = vertex_combination(s, vertices, charge_coefficients(ChargeType.LAMBDA), images)
    # P_Φ = I - P_1 - P_Λ
    phi = s - trivial - sign
    return [(ChargeType.TRIVIAL, trivial), (ChargeType.LAMBDA, sign), (ChargeType.PHI, phi)]


def branch_probabilities(s: StateVector, branches):
    total = s.norm() ** 2
    if total <= 1e-24:
        raise StateError("Cannot measure the zero vector")
    return [(label, projected.norm() ** 2 / total, projected) for label, projected in branches]


def vertex_charge_probabilities(s: StateVector, v: int) -> Dict[ChargeType, float]:
    """꼭짓점 v 의 정확한 Born 확률"""
    return {label: p for label, p, _ in branch_probabilities(s, charge_branches(s, [v]))}


# -- flux ---------------------------------------------------------------------


def holonomy_codes(keys: np.ndarray, steps: Sequence[Tuple[int, Direction]]) -> np.ndarray:
    """경로 순서대로 왼쪽에서 오른쪽으로 곱한 원소 코드 (역방향 변은 역원)"""
    product = np.zeros(keys.shape, dtype=np.int64)
    for e, direction in steps:
        digits = edge_digits(keys, e)
        if direction is Direction.AGAINST:
            digits = INV_TABLE[digits]
        product = MUL_TABLE[product, digits]
    return product


def flux_trivial_project(s: StateVector, p: int) -> StateVector:
    boundary = plaquette_edges(s.lattice, p)
    keep = holonomy_codes(s.keys, boundary) == int(GroupElement.E)
    return s.derive(s.keys[keep], s.amps[keep], canonical=True)


# -- ground state and energy --------------------------------------------------


@lru_cache(maxsize=16)
def _ground_state(lat: Lattice) -> StateVector:
    state = basis_state(lat, identity_config(lat))
    for v in range(lat.num_vertices):
        state = charge_project(state, v, ChargeType.TRIVIAL)
    state = state.normalize()
    logger.debug(f"Ground state on {lat.rows}x{lat.cols}: {len(state)} configurations")
    return state


def ground_state(lat: Lattice) -> StateVector:
    """N · Π_v P_1(v) |e...e⟩"""
    return _ground_state(lat)


def energy(s: StateVector) -> float:
    """⟨H⟩ = -Σ_v ⟨P_1(v)⟩ - Σ_p ⟨P_1(p)⟩"""
    norm = s.norm()
    if abs(norm - 1.0) > 1e-6:
        raise StateError(f"energy() needs a normalized state, got norm {norm:.9f}")
    lat = s.lattice
    total = 0.0
    for v in range(lat.num_vertices):
        total -= charge_project(s, v, ChargeType.TRIVIAL).norm() ** 2
    for p in range(lat.num_plaquettes):
        total -= flux_trivial_project(s, p).norm() ** 2
    return float(total)


# -- syndrome -----------------------------------------------------------------


class Syndrome(BaseModel):
    """꼭짓점별 전하와 플라켓별 자명 플럭스 여부"""

    vertices: List[ChargeType]
    plaquettes: List[bool]
    probability: float = 1.0

    def to_json_dict(self) -> Dict[str, list]:
        return {
            "vertices": [charge.value for charge in self.vertices],
            "plaquettes": list(self.plaquettes),
        }

    def charged(self, charge: ChargeType) -> List[int]:
        return [v for v, c in enumerate(self.vertices) if c is charge]


def syndrome_to_json(syndrome: Syndrome) -> Dict[str, list]:
    return syndrome.to_json_dict()


def measure_syndrome(s: StateVector, rng: RngLike = None) -> Tuple[Syndrome, StateVector]:
    """꼭짓점마다 {P_1, P_Λ, P_Φ}, 플라켓마다 {자명, 여집합} 을 순차 측정"""
    generator = as_generator(rng)
    lat = s.lattice
    state = s
    probability = 1.0
    charges: List[ChargeType] = []
    for v in range(lat.num_vertices):
        result = sample_branch(branch_probabilities(state, charge_branches(state, [v])), generator)
        charges.append(result.label)
        probability *= result.probability
        state = result.state
    fluxes: List[bool] = []
    for p in range(lat.num_plaquettes):
        trivial = flux_trivial_project(state, p)
        branches = [(True, trivial), (False, state - trivial)]
        result = sample_branch(branch_probabilities(state, branches), generator)
        fluxes.append(bool(result.label))
        probability *= result.probability
        state = result.state
    syndrome = Syndrome(vertices=charges, plaquettes=fluxes, probability=probability)
    logger.debug(f"Syndrome {syndrome.to_json_dict()} (p={probability:.6f})")
    return syndrome, state


# -- T_t based observables ----------------------------------------------------


def measure_Tt(s: StateVector, v: int, rng: RngLike = None) -> Tuple[int, StateVector]:
    """T_t(v) 의 ±1 고유 사영 (I ± T_t)/2 측정"""
    result = measure_Tt_result(s, v, rng)
    return int(result.label), result.state


def measure_Tt_result(s: StateVector, v: int, rng: RngLike = None) -> MeasurementResult:
    flipped = vertex_op(s, v, GroupElement.T)
    branches = [(1, 0.5 * (s + flipped)), (-1, 0.5 * (s - flipped))]
    return sample_branch(branch_probabilities(s, branches), rng)


def modified_lambda_project(s: StateVector, v: int) -> StateVector:
    """P'_Λ(v) = [T_e(v) + T_t(v)] / 2"""
    return 0.5 * (s + vertex_op(s, v, GroupElement.T))


def tt_parity_op(s: StateVector, vertices: Sequence[int]) -> StateVector:
    """Π_v T_t(v): 꼭짓점 집합에 담긴 Λ 개수의 홀짝 연산자"""
    state = s
    for v in vertices:
        state = vertex_op(state, v, GroupElement.T)
    return state


class ModifiedSyndrome(BaseModel):
    """P'_Λ 신드롬: 꼭짓점별 T_t 부호 (-1 이면 Λ 검출)"""

    signs: List[int]
    probability: float = 1.0

    def lambda_vertices(self) -> List[int]:
        return [v for v, sign in enumerate(self.signs) if sign < 0]


def measure_modified_syndrome(
    s: StateVector, rng: RngLike = None, vertices: Optional[Sequence[int]] = None
) -> Tuple[ModifiedSyndrome, StateVector]:
    """모든 꼭짓점에서 {P'_Λ, I - P'_Λ} 를 측정해 Φ 안에 숨은 Λ 까지 센다"""
    generator = as_generator(rng)
    targets = range(s.lattice.num_vertices) if vertices is None else vertices
    state = s
    signs: List[int] = []
    probability = 1.0
    for v in targets:
        result = measure_Tt_result(state, v, generator)
        signs.append(int(result.label))
        probability *= result.probability
        state = result.state
    return ModifiedSyndrome(signs=signs, probability=probability), state
