"""
Sparse State Vector Engine
6준위 스핀 배치 위의 희소 상태 벡터와 연산자 적용, 사영 측정

A basis configuration packs one S3 element code per edge into an int64,
3 bits per edge (edge e occupies bits 3e..3e+2). A StateVector stores a
sorted array of distinct keys and a parallel complex128 amplitude array;
amplitudes with magnitude <= tolerance are never stored.
"""
from dataclasses import dataclass
from typing import Callable, Hashable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.group.s3 import ELEMENTS, INV_TABLE, MUL_TABLE, GroupElement, as_element
from app.lattice.grid import Lattice
from app.utils.config import settings
from app.utils.errors import MeasurementError, SizeBudgetError, StateError
from app.utils.logger import logger

BITS_PER_EDGE = 3
DIGIT_MASK = 0b111
MAX_PACKED_EDGES = 21

RngLike = Union[np.random.Generator, np.random.SeedSequence, int, None]


def as_generator(rng: RngLike = None) -> np.random.Generator:
    """시드, SeedSequence, Generator 를 Generator 로 변환"""
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        rng = settings.default_seed
    return np.random.default_rng(rng)


def check_size_budget(lattice: Lattice) -> None:
    limit = min(settings.max_edges, MAX_PACKED_EDGES)
    if lattice.num_edges > limit:
        raise SizeBudgetError(
            f"Lattice has {lattice.num_edges} edges; the size budget allows at most {limit}"
        )


def pack_config(config: Sequence[Union[GroupElement, int, str]]) -> int:
    key = 0
    for e, element in enumerate(config):
        key |= int(as_element(element)) << (BITS_PER_EDGE * e)
    return key


def unpack_key(key: int, num_edges: int) -> Tuple[GroupElement, ...]:
    return tuple(
        GroupElement((int(key) >> (BITS_PER_EDGE * e)) & DIGIT_MASK) for e in range(num_edges)
    )


def config_string(key: int, num_edges: int) -> str:
    return ",".join(element.label for element in unpack_key(key, num_edges))


def edge_digits(keys: np.ndarray, e: int) -> np.ndarray:
    return (keys >> (BITS_PER_EDGE * e)) & DIGIT_MASK


def replace_digits(keys: np.ndarray, e: int, old: np.ndarray, new: np.ndarray) -> np.ndarray:
    return keys + ((new - old) << (BITS_PER_EDGE * e))


class StateVector:
    """희소 진폭 테이블 |Ψ⟩ = Σ amp[k] |k⟩"""

    __slots__ = ("lattice", "keys", "amps", "tolerance")

    def __init__(
        self,
        lattice: Lattice,
        keys: np.ndarray,
        amps: np.ndarray,
        tolerance: Optional[float] = None,
        *,
        canonical: bool = False,
    ):
        self.lattice = lattice
        self.tolerance = settings.amplitude_tolerance if tolerance is None else tolerance
        keys = np.asarray(keys, dtype=np.int64)
        amps = np.asarray(amps, dtype=np.complex128)
        if not canonical:
            keys, amps = _merge(keys, amps)
        keep = np.abs(amps) > self.tolerance
        if not keep.all():
            keys, amps = keys[keep], amps[keep]
        self.keys = keys
        self.amps = amps

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, lattice: Lattice, tolerance: Optional[float] = None) -> "StateVector":
        return cls(
            lattice,
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.complex128),
            tolerance,
            canonical=True,
        )

    def derive(self, keys: np.ndarray, amps: np.ndarray, canonical: bool = False) -> "StateVector":
        return StateVector(self.lattice, keys, amps, self.tolerance, canonical=canonical)

    def copy(self) -> "StateVector":
        return self.derive(self.keys.copy(), self.amps.copy(), canonical=True)

    # -- linear structure -----------------------------------------------------

    def _check_same_lattice(self, other: "StateVector") -> None:
        if other.lattice != self.lattice:
            raise StateError("States live on different lattices")

    def __add__(self, other: "StateVector") -> "StateVector":
        self._check_same_lattice(other)
        return self.derive(
            np.concatenate([self.keys, other.keys]), np.concatenate([self.amps, other.amps])
        )

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "StateVector":
        return self.derive(self.keys, self.amps * scalar, canonical=True)

    __rmul__ = __mul__

    def __len__(self) -> int:
        return int(self.keys.size)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def normalize(self) -> "StateVector":
        state, _ = renormalize(self)
        return state

    def is_zero(self, threshold: float = 1e-12) -> bool:
        return self.norm() <= threshold

    def amplitude(self, config: Sequence[Union[GroupElement, int, str]]) -> complex:
        key = pack_config(config)
        index = np.searchsorted(self.keys, key)
        if index < self.keys.size and self.keys[index] == key:
            return complex(self.amps[index])
        return 0j

    def dump(self) -> str:
        """디버그용 덤프: 'config TAB re TAB im' 줄 목록"""
        lines = [
            f"{config_string(int(k), self.lattice.num_edges)}\t{a.real:.17g}\t{a.imag:.17g}"
            for k, a in zip(self.keys, self.amps)
        ]
        return "\n".join(lines)

    def __repr__(self) -> str:
        return (
            f"StateVector({self.lattice.rows}x{self.lattice.cols}, "
            f"entries={len(self)}, norm={self.norm():.6g})"
        )


def _merge(keys: np.ndarray, amps: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """중복 키를 합치고 정렬"""
    if keys.size == 0:
        return keys, amps
    unique, inverse_index = np.unique(keys, return_inverse=True)
    if unique.size == keys.size:
        order = np.argsort(keys, kind="stable")
        return keys[order], amps[order]
    real = np.bincount(inverse_index, weights=amps.real, minlength=unique.size)
    imag = np.bincount(inverse_index, weights=amps.imag, minlength=unique.size)
    return unique, real + 1j * imag


def combine(lattice: Lattice, parts: Sequence[Tuple[np.ndarray, np.ndarray]], tolerance: float) -> StateVector:
    """(keys, amps) 조각들의 선형 결합"""
    if not parts:
        return StateVector.zero(lattice, tolerance)
    keys = np.concatenate([k for k, _ in parts])
    amps = np.concatenate([a for _, a in parts])
    return StateVector(lattice, keys, amps, tolerance)


def renormalize(s: StateVector) -> Tuple[StateVector, float]:
    """정규화된 상태와 정규화 전 노름을 함께 반환"""
    norm = s.norm()
    if norm <= 1e-12:
        raise StateError("Cannot normalize the zero vector")
    return s.derive(s.keys, s.amps / norm, canonical=True), norm


# -- operations ---------------------------------------------------------------


def basis_state(lat: Lattice, config: Sequence[Union[GroupElement, int, str]]) -> StateVector:
    if len(config) != lat.num_edges:
        raise StateError(f"Config has {len(config)} entries, lattice has {lat.num_edges} edges")
    check_size_budget(lat)
    key = pack_config(config)
    return StateVector(lat, np.array([key], dtype=np.int64), np.array([1.0 + 0j]), canonical=True)


def identity_config(lat: Lattice) -> List[GroupElement]:
    return [GroupElement.E] * lat.num_edges


def permuted_keys(s: StateVector, tables: Sequence[Tuple[int, np.ndarray]]) -> np.ndarray:
    """각 (edge, lookup) 에 대해 digit 을 lookup[digit] 로 치환한 키 배열"""
    keys = s.keys
    for e, table in tables:
        old = edge_digits(keys, e)
        keys = replace_digits(keys, e, old, table[old])
    return keys


def apply_edge_permutation(s: StateVector, tables: Sequence[Tuple[int, np.ndarray]]) -> StateVector:
    for e, _ in tables:
        s.lattice.check_edge(e)
    return s.derive(permuted_keys(s, tables), s.amps)


def left_table(g: Union[GroupElement, int]) -> np.ndarray:
    """L_g: h -> g h"""
    return MUL_TABLE[int(g)]


def right_table(g: Union[GroupElement, int]) -> np.ndarray:
    """R_g: h -> h g"""
    return MUL_TABLE[:, int(g)]


def apply_left_mul(s: StateVector, e: int, g: Union[GroupElement, int, str]) -> StateVector:
    return apply_edge_permutation(s, [(e, left_table(as_element(g)))])


def apply_right_mul(s: StateVector, e: int, g: Union[GroupElement, int, str]) -> StateVector:
    return apply_edge_permutation(s, [(e, right_table(as_element(g)))])


def apply_inverse(s: StateVector, e: int) -> StateVector:
    return apply_edge_permutation(s, [(e, INV_TABLE)])


@dataclass(frozen=True)
class SpinDiagonalOp:
    """단일 스핀 대각 연산자: table[element] 를 진폭에 곱함"""

    table: Tuple[complex, ...]
    edge: int

    def __post_init__(self):
        if len(self.table) != len(ELEMENTS):
            raise StateError(f"Diagonal table needs {len(ELEMENTS)} entries, got {len(self.table)}")

    def lookup(self) -> np.ndarray:
        padded = np.zeros(8, dtype=np.complex128)
        padded[:6] = self.table
        return padded


def apply_diagonal(s: StateVector, op: SpinDiagonalOp) -> StateVector:
    s.lattice.check_edge(op.edge)
    factors = op.lookup()[edge_digits(s.keys, op.edge)]
    return s.derive(s.keys, s.amps * factors, canonical=True)


def apply_key_function(s: StateVector, weights: np.ndarray) -> StateVector:
    """키별 가중치 배열을 곱하는 일반 대각 연산자"""
    return s.derive(s.keys, s.amps * weights, canonical=True)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """⟨a|b⟩"""
    a._check_same_lattice(b)
    _, ia, ib = np.intersect1d(a.keys, b.keys, assume_unique=True, return_indices=True)
    return complex(np.vdot(a.amps[ia], b.amps[ib]))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|⟨a|b⟩|² / (‖a‖²‖b‖²)"""
    denom = (a.norm() * b.norm()) ** 2
    if denom <= 1e-24:
        raise StateError("Fidelity of a zero vector is undefined")
    return abs(inner_product(a, b)) ** 2 / denom


# -- measurement --------------------------------------------------------------

ProjectorAction = Callable[[StateVector], StateVector]


@dataclass(frozen=True)
class MeasurementResult:
    label: Hashable
    probability: float
    state: StateVector


def born_probabilities(
    s: StateVector, projectors: Sequence[Tuple[Hashable, ProjectorAction]]
) -> List[Tuple[Hashable, float, StateVector]]:
    """각 사영 연산자에 대한 Born 확률과 사영된(비정규화) 상태"""
    total = s.norm() ** 2
    if total <= 1e-24:
        raise StateError("Cannot measure the zero vector")
    branches = []
    for label, action in projectors:
        projected = action(s)
        branches.append((label, projected.norm() ** 2 / total, projected))
    return branches


def measure(
    s: StateVector,
    projectors: Sequence[Tuple[Hashable, ProjectorAction]],
    rng: RngLike = None,
    check_completeness: bool = False,
) -> MeasurementResult:
    """Born 규칙에 따라 결과를 샘플링하고 정규화된 사후 상태를 반환"""
    branches = born_probabilities(s, projectors)
    if check_completeness:
        tolerance = settings.completeness_tolerance
        scale = max(1.0, s.norm() ** 2)
        residual = s
        for _, _, projected in branches:
            residual = residual - projected
        if residual.norm() > tolerance * max(1.0, s.norm()):
            raise MeasurementError(
                f"Projector set is not complete: residual norm {residual.norm():.3e} > {tolerance:.1e}"
            )
        for i, (label_i, _, projected_i) in enumerate(branches):
            for label_j, _, projected_j in branches[i + 1:]:
                overlap = abs(inner_product(projected_i, projected_j))
                if overlap > tolerance * scale:
                    raise MeasurementError(
                        f"Projectors {label_i!r} and {label_j!r} are not orthogonal: overlap {overlap:.3e}"
                    )
    return sample_branch(branches, rng)


def sample_branch(
    branches: Sequence[Tuple[Hashable, float, StateVector]], rng: RngLike = None
) -> MeasurementResult:
    """(라벨, 확률, 사영 상태) 목록에서 결과 하나를 샘플링"""
    probabilities = np.array([p for _, p, _ in branches])
    if probabilities.sum() < 1e-12:
        raise MeasurementError("All outcome probabilities vanish; projector set is inconsistent")
    probabilities = probabilities / probabilities.sum()
    generator = as_generator(rng)
    u = generator.random()
    index = int(np.searchsorted(np.cumsum(probabilities), u, side="right"))
    index = min(index, len(branches) - 1)
    # 확률이 0 인 결과는 선택하지 않는다
    while probabilities[index] <= 0.0:
        index -= 1
    label, probability, projected = branches[index]
    logger.debug(f"Measured outcome {label!r} with probability {probability:.6f}")
    return MeasurementResult(label, float(probability), projected.normalize())


def measure_partition(s: StateVector, key_labels: np.ndarray, labels: Sequence[Hashable], rng: RngLike = None) -> MeasurementResult:
    """키별 라벨로 정의되는 대각 관측량 측정"""
    projectors = [
        (label, (lambda state, mask=(key_labels == label): state.derive(state.keys[mask], state.amps[mask], canonical=True)))
        for label in labels
    ]
    return measure(s, projectors, rng)
