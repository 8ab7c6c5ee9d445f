"""
S3 Group Arithmetic
대칭군 S3 의 곱셈, 역원, 지표(character) 테이블

Elements are kept in the normal form t^a c^b and encoded as the integer
3a + b, so the enumeration order is (e, c, c2, t, tc, tc2). Every diagonal
single-spin operator in the simulator is a 6-entry table in this order.
"""
from enum import Enum, IntEnum
from typing import Dict, Tuple, Union

import numpy as np

OMEGA: complex = complex(np.exp(2j * np.pi / 3))


class GroupElement(IntEnum):
    """t^a c^b, value = 3a + b"""

    E = 0
    C = 1
    C2 = 2
    T = 3
    TC = 4
    TC2 = 5

    @property
    def a(self) -> int:
        return int(self) // 3

    @property
    def b(self) -> int:
        return int(self) % 3

    @property
    def label(self) -> str:
        return _LABELS[int(self)]

    @property
    def is_reflection(self) -> bool:
        return self.a == 1

    @classmethod
    def from_normal_form(cls, a: int, b: int) -> "GroupElement":
        return cls(3 * (a % 2) + (b % 3))

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        """'e', 'c', 'c2', 't', 'tc', 'tc2' 문자열 파싱"""
        try:
            return _BY_LABEL[text.strip()]
        except KeyError:
            raise ValueError(f"Unknown S3 element: {text!r}") from None

    def __str__(self) -> str:
        return self.label


_LABELS: Tuple[str, ...] = ("e", "c", "c2", "t", "tc", "tc2")
_BY_LABEL: Dict[str, GroupElement] = {}

ELEMENTS: Tuple[GroupElement, ...] = tuple(GroupElement)


def mul(x: GroupElement, y: GroupElement) -> GroupElement:
    """t^{a_x} c^{b_x} · t^{a_y} c^{b_y}, reduced with c^b t = t c^{-b}"""
    sign = -1 if y.a else 1
    return GroupElement.from_normal_form(x.a + y.a, sign * x.b + y.b)


def inverse(x: GroupElement) -> GroupElement:
    if x.a:
        # 반사(reflection)는 자기 자신이 역원
        return x
    return GroupElement.from_normal_form(0, -x.b)


def conjugate(g: GroupElement, h: GroupElement) -> GroupElement:
    """g h g^{-1}"""
    return mul(mul(g, h), inverse(g))


class Irrep(Enum):
    """S3 의 기약 표현: (label, dimension)"""

    TRIVIAL = ("1", 1)
    SIGN = ("L", 1)
    TWO_DIM = ("P", 2)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def dimension(self) -> int:
        return self.value[1]


# rows follow Irrep order, columns follow ELEMENTS order
CHARACTER_TABLE: Dict[Irrep, np.ndarray] = {
    Irrep.TRIVIAL: np.array([1, 1, 1, 1, 1, 1], dtype=float),
    Irrep.SIGN: np.array([1, 1, 1, -1, -1, -1], dtype=float),
    Irrep.TWO_DIM: np.array([2, -1, -1, 0, 0, 0], dtype=float),
}


def character(irrep: Irrep, x: GroupElement) -> float:
    return float(CHARACTER_TABLE[irrep][int(x)])


def _padded_table(entries) -> np.ndarray:
    # codes 6 and 7 are never stored in a key; they map to themselves
    table = np.arange(8, dtype=np.int64)
    table[:6] = entries
    return table


for _element in ELEMENTS:
    _BY_LABEL[_element.label] = _element

#: MUL_TABLE[x, y] = x·y as codes, usable for fancy indexing on digit arrays
MUL_TABLE: np.ndarray = np.zeros((8, 8), dtype=np.int64)
for _x in ELEMENTS:
    MUL_TABLE[int(_x)] = _padded_table([int(mul(_x, _y)) for _y in ELEMENTS])
for _pad in (6, 7):
    MUL_TABLE[_pad] = _pad

INV_TABLE: np.ndarray = _padded_table([int(inverse(_x)) for _x in ELEMENTS])


def as_element(value: Union[GroupElement, int, str]) -> GroupElement:
    """정수, 문자열, GroupElement 를 GroupElement 로 정규화"""
    if isinstance(value, GroupElement):
        return value
    if isinstance(value, str):
        return GroupElement.parse(value)
    return GroupElement(int(value))
