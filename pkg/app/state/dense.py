"""
Dense reference backend
작은 격자(변 5개 이하)에서 희소 엔진을 검증하기 위한 밀집 벡터 구현

Index of a configuration is Σ_e code_e · 6^e.
"""
from typing import Sequence, Tuple, Union

import numpy as np

from app.group.s3 import INV_TABLE, MUL_TABLE, GroupElement, as_element
from app.lattice.grid import Lattice
from app.state.state_vector import BITS_PER_EDGE, StateVector, SpinDiagonalOp, edge_digits
from app.utils.errors import SizeBudgetError

MAX_DENSE_EDGES = 5


def _check_dense(lattice: Lattice) -> None:
    if lattice.num_edges > MAX_DENSE_EDGES:
        raise SizeBudgetError(
            f"Dense backend supports at most {MAX_DENSE_EDGES} edges, lattice has {lattice.num_edges}"
        )


def dense_digits(num_edges: int) -> np.ndarray:
    """shape (6^E, E): 각 밀집 인덱스의 변별 원소 코드"""
    index = np.arange(6 ** num_edges)
    return np.stack([(index // 6 ** e) % 6 for e in range(num_edges)], axis=1)


def dense_index(digits: np.ndarray) -> np.ndarray:
    weights = 6 ** np.arange(digits.shape[1])
    return digits @ weights


def to_dense(s: StateVector) -> np.ndarray:
    _check_dense(s.lattice)
    vec = np.zeros(6 ** s.lattice.num_edges, dtype=np.complex128)
    if len(s):
        digits = np.stack([edge_digits(s.keys, e) for e in range(s.lattice.num_edges)], axis=1)
        vec[dense_index(digits)] = s.amps
    return vec


def from_dense(lattice: Lattice, vec: np.ndarray) -> StateVector:
    _check_dense(lattice)
    digits = dense_digits(lattice.num_edges)
    keys = np.zeros(digits.shape[0], dtype=np.int64)
    for e in range(lattice.num_edges):
        keys |= digits[:, e].astype(np.int64) << (BITS_PER_EDGE * e)
    return StateVector(lattice, keys, np.asarray(vec, dtype=np.complex128))


def random_dense(lattice: Lattice, rng: np.random.Generator) -> np.ndarray:
    _check_dense(lattice)
    size = 6 ** lattice.num_edges
    vec = rng.normal(size=size) + 1j * rng.normal(size=size)
    return vec / np.linalg.norm(vec)


def _permute(vec: np.ndarray, num_edges: int, edits: Sequence[Tuple[int, np.ndarray]]) -> np.ndarray:
    digits = dense_digits(num_edges)
    new_digits = digits.copy()
    for e, table in edits:
        new_digits[:, e] = table[digits[:, e]]
    out = np.zeros_like(vec)
    out[dense_index(new_digits)] = vec
    return out


def dense_left_mul(vec: np.ndarray, num_edges: int, e: int, g: Union[GroupElement, int, str]) -> np.ndarray:
    return _permute(vec, num_edges, [(e, MUL_TABLE[int(as_element(g))])])


def dense_right_mul(vec: np.ndarray, num_edges: int, e: int, g: Union[GroupElement, int, str]) -> np.ndarray:
    return _permute(vec, num_edges, [(e, MUL_TABLE[:, int(as_element(g))])])


def dense_inverse(vec: np.ndarray, num_edges: int, e: int) -> np.ndarray:
    return _permute(vec, num_edges, [(e, INV_TABLE)])


def dense_diagonal(vec: np.ndarray, num_edges: int, op: SpinDiagonalOp) -> np.ndarray:
    digits = dense_digits(num_edges)
    return vec * np.asarray(op.table, dtype=np.complex128)[digits[:, op.edge]]


def dense_inner(a: np.ndarray, b: np.ndarray) -> complex:
    return complex(np.vdot(a, b))
