"""
희소 상태 벡터 엔진 테스트
밀집 벡터 구현(변 5개 이하)을 기준값으로 사용한다
"""
import numpy as np
import pytest

from app.group.s3 import ELEMENTS
from app.lattice.grid import build_grid
from app.state.dense import (
    dense_diagonal,
    dense_inner,
    dense_inverse,
    dense_left_mul,
    dense_right_mul,
    from_dense,
    random_dense,
    to_dense,
)
from app.state.state_vector import (
    SpinDiagonalOp,
    StateVector,
    apply_diagonal,
    apply_inverse,
    apply_left_mul,
    apply_right_mul,
    as_generator,
    basis_state,
    config_string,
    fidelity,
    identity_config,
    inner_product,
    measure,
    measure_partition,
    pack_config,
    unpack_key,
)
from app.utils.errors import MeasurementError, SizeBudgetError, StateError


def test_pack_and_unpack(lat22):
    config = ["c", "t", "tc2", "e"]
    key = pack_config(config)
    assert [x.label for x in unpack_key(key, 4)] == config
    assert config_string(key, 4) == "c,t,tc2,e"


def test_basis_state(lat22):
    s = basis_state(lat22, ["c", "e", "e", "t"])
    assert len(s) == 1
    assert s.norm() == pytest.approx(1.0)
    assert s.amplitude(["c", "e", "e", "t"]) == pytest.approx(1.0)
    assert s.amplitude(identity_config(lat22)) == 0
    with pytest.raises(StateError):
        basis_state(lat22, ["e"])


def test_linear_structure_merges_and_prunes(lat22):
    a = basis_state(lat22, identity_config(lat22))
    b = basis_state(lat22, ["c", "e", "e", "e"])
    total = a + b + a
    assert len(total) == 2
    assert total.amplitude(identity_config(lat22)) == pytest.approx(2.0)
    assert (total - total).is_zero()
    assert len(total - 2 * a) == 1
    assert (0.5 * total).norm() == pytest.approx(np.sqrt(5) / 2)


def test_normalize_zero_vector_raises(lat22):
    with pytest.raises(StateError):
        StateVector.zero(lat22).normalize()


@pytest.mark.parametrize("g", list(ELEMENTS))
def test_multiplication_matches_dense_reference(lat22, rng, g):
    vec = random_dense(lat22, rng)
    s = from_dense(lat22, vec)
    for e in range(lat22.num_edges):
        np.testing.assert_allclose(to_dense(apply_left_mul(s, e, g)), dense_left_mul(vec, 4, e, g), atol=1e-12)
        np.testing.assert_allclose(to_dense(apply_right_mul(s, e, g)), dense_right_mul(vec, 4, e, g), atol=1e-12)


def test_inverse_and_diagonal_match_dense_reference(lat22, rng):
    vec = random_dense(lat22, rng)
    s = from_dense(lat22, vec)
    op = SpinDiagonalOp((1, 1j, -1, 0.5, 0, 2), edge=2)
    np.testing.assert_allclose(to_dense(apply_inverse(s, 1)), dense_inverse(vec, 4, 1), atol=1e-12)
    np.testing.assert_allclose(to_dense(apply_diagonal(s, op)), dense_diagonal(vec, 4, op), atol=1e-12)


def test_left_and_right_multiplication_commute(lat22, rng):
    s = from_dense(lat22, random_dense(lat22, rng))
    lr = apply_right_mul(apply_left_mul(s, 0, "c"), 0, "t")
    rl = apply_left_mul(apply_right_mul(s, 0, "t"), 0, "c")
    assert fidelity(lr, rl) == pytest.approx(1.0)


def test_inner_product_and_fidelity(lat22, rng):
    a_vec, b_vec = random_dense(lat22, rng), random_dense(lat22, rng)
    a, b = from_dense(lat22, a_vec), from_dense(lat22, b_vec)
    assert inner_product(a, b) == pytest.approx(dense_inner(a_vec, b_vec))
    assert fidelity(a, 1j * a) == pytest.approx(1.0)
    with pytest.raises(StateError):
        fidelity(a, StateVector.zero(lat22))


def test_size_budget():
    big = build_grid(4, 4)
    with pytest.raises(SizeBudgetError):
        basis_state(big, ["e"] * big.num_edges)


def test_measure_requires_complete_projectors(lat22):
    s = (basis_state(lat22, identity_config(lat22)) + basis_state(lat22, ["t", "e", "e", "e"])).normalize()
    keep_identity = lambda state: state.derive(state.keys[state.keys == 0], state.amps[state.keys == 0])
    with pytest.raises(MeasurementError):
        measure(s, [("id", keep_identity)], rng=1, check_completeness=True)


def test_measure_requires_orthogonal_projectors(lat22):
    s = (basis_state(lat22, identity_config(lat22)) + basis_state(lat22, ["t", "e", "e", "e"])).normalize()
    identity_part = lambda state: state.derive(state.keys[state.keys == 0], state.amps[state.keys == 0])
    flip_part = lambda state: state.derive(state.keys[state.keys != 0], state.amps[state.keys != 0])
    overlapping = [
        ("a", lambda state: identity_part(state) + 0.5 * flip_part(state)),
        ("b", lambda state: 0.5 * flip_part(state)),
    ]
    with pytest.raises(MeasurementError, match="not orthogonal"):
        measure(s, overlapping, rng=1, check_completeness=True)
    result = measure(s, [("id", identity_part), ("flip", flip_part)], rng=1, check_completeness=True)
    assert result.probability == pytest.approx(0.5)


def test_measure_partition_statistics(lat22):
    s = (basis_state(lat22, identity_config(lat22)) + basis_state(lat22, ["t", "e", "e", "e"])).normalize()
    labels = np.where(s.keys == 0, "identity", "flip")
    generator = as_generator(5)
    outcomes = [measure_partition(s, labels, ["identity", "flip"], generator) for _ in range(400)]
    frequency = np.mean([r.label == "identity" for r in outcomes])
    assert abs(frequency - 0.5) < 3 * np.sqrt(0.25 / 400)
    assert all(len(r.state) == 1 and r.state.norm() == pytest.approx(1.0) for r in outcomes)
    assert all(r.probability == pytest.approx(0.5) for r in outcomes)


def test_as_generator_is_reproducible():
    assert as_generator(3).random() == as_generator(3).random()
    generator = np.random.default_rng(0)
    assert as_generator(generator) is generator
    assert isinstance(as_generator(None), np.random.Generator)
