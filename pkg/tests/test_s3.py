"""
S3 군 연산 테스트
"""
import itertools

import numpy as np
import pytest

from app.group.s3 import (
    CHARACTER_TABLE,
    ELEMENTS,
    INV_TABLE,
    MUL_TABLE,
    GroupElement,
    Irrep,
    as_element,
    character,
    conjugate,
    inverse,
    mul,
)

# permutations of {0, 1, 2}: (p ∘ q)(i) = p(q(i))
ROTATION = (1, 2, 0)
REFLECTION = (0, 2, 1)
IDENTITY = (0, 1, 2)


def compose(p, q):
    return tuple(p[q[i]] for i in range(3))


def permutation(x: GroupElement):
    result = IDENTITY
    for _ in range(x.a):
        result = compose(result, REFLECTION)
    for _ in range(x.b):
        result = compose(result, ROTATION)
    return result


def test_permutation_representation_is_faithful():
    assert len({permutation(x) for x in ELEMENTS}) == 6


@pytest.mark.parametrize("x,y", list(itertools.product(ELEMENTS, ELEMENTS)))
def test_cayley_table_matches_permutation_composition(x, y):
    assert permutation(mul(x, y)) == compose(permutation(x), permutation(y))
    assert MUL_TABLE[int(x), int(y)] == int(mul(x, y))


def test_inverse_and_identity():
    for x in ELEMENTS:
        assert mul(x, inverse(x)) is GroupElement.E
        assert mul(GroupElement.E, x) is x
        assert INV_TABLE[int(x)] == int(inverse(x))
    assert inverse(GroupElement.C) is GroupElement.C2


def test_reflection_relation():
    # t c t = c^{-1}
    t, c = GroupElement.T, GroupElement.C
    assert mul(mul(t, c), t) is GroupElement.C2
    assert all(x.is_reflection == (x.a == 1) for x in ELEMENTS)


def test_conjugacy_classes():
    classes = {frozenset(conjugate(g, h) for g in ELEMENTS) for h in ELEMENTS}
    sizes = sorted(len(cls) for cls in classes)
    assert sizes == [1, 2, 3]


def test_character_orthogonality():
    irreps = list(Irrep)
    for a, b in itertools.product(irreps, irreps):
        inner = np.dot(CHARACTER_TABLE[a], CHARACTER_TABLE[b]) / 6
        assert inner == pytest.approx(1.0 if a is b else 0.0)


def test_character_is_class_function():
    for irrep, g, h in itertools.product(Irrep, ELEMENTS, ELEMENTS):
        assert CHARACTER_TABLE[irrep][int(conjugate(g, h))] == CHARACTER_TABLE[irrep][int(h)]


def test_parse_and_labels():
    assert [x.label for x in ELEMENTS] == ["e", "c", "c2", "t", "tc", "tc2"]
    assert as_element("tc2") is GroupElement.TC2
    assert as_element(4) is GroupElement.TC
    with pytest.raises(ValueError):
        GroupElement.parse("x")


def test_character_lookup():
    assert character(Irrep.TWO_DIM, GroupElement.C) == -1.0
    assert character(Irrep.SIGN, GroupElement.TC2) == -1.0
    assert Irrep.TWO_DIM.dimension == 2
