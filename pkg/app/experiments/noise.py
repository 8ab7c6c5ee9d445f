"""
Noise Injection
스핀별 무작위 유니터리 오류 (궤적 방식)
"""
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.group.s3 import CHARACTER_TABLE, OMEGA, GroupElement, Irrep, as_element
from app.state.state_vector import (
    RngLike,
    SpinDiagonalOp,
    StateVector,
    apply_diagonal,
    apply_left_mul,
    apply_right_mul,
    as_generator,
)
from app.utils.errors import SimulationError

PHASE_PATTERN = (1, OMEGA, OMEGA**2, 1, OMEGA, OMEGA**2)


class ErrorKind(str, Enum):
    LEFT_MUL = "left"
    RIGHT_MUL = "right"
    SIGN_FLIP = "sign"
    PHASE_PATTERN = "phase"


class ErrorOp(BaseModel):
    """단일 스핀 오류 연산자 (LeftMul/RightMul 은 g ≠ e)"""

    model_config = ConfigDict(frozen=True)

    kind: ErrorKind
    element: Optional[GroupElement] = None

    @field_validator("element", mode="before")
    @classmethod
    def _parse_element(cls, value):
        return None if value is None else as_element(value)

    @property
    def label(self) -> str:
        if self.element is None:
            return self.kind.value
        return f"{self.kind.value}:{self.element.label}"

    @classmethod
    def parse(cls, text: str) -> "ErrorOp":
        """'sign', 'phase', 'left:c', 'right:tc2' 형식"""
        kind, _, element = text.strip().partition(":")
        op = cls(kind=ErrorKind(kind), element=element or None)
        op.check()
        return op

    def check(self) -> None:
        multiplies = self.kind in (ErrorKind.LEFT_MUL, ErrorKind.RIGHT_MUL)
        if multiplies and self.element in (None, GroupElement.E):
            raise SimulationError(f"{self.kind.value} errors need a non-identity element")
        if not multiplies and self.element is not None:
            raise SimulationError(f"{self.kind.value} errors take no element")

    def apply(self, s: StateVector, e: int) -> StateVector:
        if self.kind is ErrorKind.LEFT_MUL:
            return apply_left_mul(s, e, self.element)
        if self.kind is ErrorKind.RIGHT_MUL:
            return apply_right_mul(s, e, self.element)
        if self.kind is ErrorKind.SIGN_FLIP:
            return apply_diagonal(s, SpinDiagonalOp(tuple(CHARACTER_TABLE[Irrep.SIGN]), e))
        return apply_diagonal(s, SpinDiagonalOp(PHASE_PATTERN, e))


class NoiseModel(BaseModel):
    p: float = Field(0.0, ge=0.0, le=1.0, description="Per-spin, per-step error probability")
    errors: List[ErrorOp] = Field(
        default_factory=lambda: [ErrorOp(kind=ErrorKind.SIGN_FLIP)], min_length=1
    )
    steps: int = Field(1, ge=0)

    @field_validator("errors", mode="before")
    @classmethod
    def _parse_errors(cls, value):
        if isinstance(value, str):
            value = [part for part in value.split(",") if part.strip()]
        return [ErrorOp.parse(item) if isinstance(item, str) else item for item in value]

    @field_validator("errors")
    @classmethod
    def _check_errors(cls, value):
        for op in value:
            op.check()
        return value

    @property
    def sign_flip_only(self) -> bool:
        return all(op.kind is ErrorKind.SIGN_FLIP for op in self.errors)


class AppliedError(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: int
    edge: int
    op: str


ErrorLog = List[AppliedError]


def sample_errors(num_edges: int, model: NoiseModel, rng: RngLike = None) -> List[Tuple[int, int, ErrorOp]]:
    """(step, edge, op) 목록. 스텝마다 각 변이 확률 p 로 오류 집합에서 균등 추출"""
    generator = as_generator(rng)
    events = []
    for step in range(model.steps):
        hits = generator.random(num_edges) < model.p
        choices = generator.integers(len(model.errors), size=num_edges)
        for e in np.flatnonzero(hits):
            events.append((step, int(e), model.errors[int(choices[e])]))
    return events


def apply_errors(s: StateVector, events: Sequence[Tuple[int, int, ErrorOp]]) -> Tuple[StateVector, ErrorLog]:
    log: ErrorLog = []
    for step, e, op in events:
        s = op.apply(s, e)
        log.append(AppliedError(step=step, edge=e, op=op.label))
    return s, log


def inject_noise(s: StateVector, model: NoiseModel, rng: RngLike = None) -> Tuple[StateVector, ErrorLog]:
    return apply_errors(s, sample_errors(s.lattice.num_edges, model, rng))
