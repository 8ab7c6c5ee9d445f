"""
전하 생성 연산자와 융합 채널 테스트
"""
import pytest
from pydantic import ValidationError

from app.codes import phi_block
from app.lattice.grid import Direction, Path, path_between
from app.model.anyons import (
    AnyonPair,
    ChainFlavor,
    CreationKind,
    apply_w,
    pair_charge_measure,
    pair_charge_probabilities,
    u_vertex,
    w_lambda_chain,
    w_phi_chain,
)
from app.model.quantum_double import ChargeType, vertex_charge_probabilities
from app.state.dense import from_dense, random_dense
from app.state.state_vector import basis_state, fidelity, identity_config
from app.utils.errors import LatticeError, StateError


def charges(state):
    """꼭짓점별로 확률 1 인 전하"""
    result = []
    for v in range(state.lattice.num_vertices):
        probabilities = vertex_charge_probabilities(state, v)
        label = max(probabilities, key=probabilities.get)
        assert probabilities[label] == pytest.approx(1.0)
        result.append(label)
    return result


@pytest.mark.parametrize(
    "kind,charge",
    [
        (CreationKind.W_LAMBDA, ChargeType.LAMBDA),
        (CreationKind.W_PHI, ChargeType.PHI),
        (CreationKind.W_PHI_PRIME, ChargeType.PHI),
    ],
)
def test_single_spin_creation_is_local(gs22, kind, charge):
    state = apply_w(gs22, kind, 0).normalize()
    assert charges(state) == [charge, charge, ChargeType.TRIVIAL, ChargeType.TRIVIAL]


@pytest.mark.parametrize("flavor", list(ChainFlavor))
def test_phi_chain_charges_only_endpoints(gs23, lat23, flavor):
    path = path_between(lat23, 0, 5)
    state = w_phi_chain(gs23, path, flavor).normalize()
    expected = [ChargeType.TRIVIAL] * 6
    expected[0] = expected[5] = ChargeType.PHI
    assert charges(state) == expected


def test_lambda_chain_charges_only_endpoints(gs23, lat23):
    state = w_lambda_chain(gs23, path_between(lat23, 3, 2))
    assert state.norm() == pytest.approx(1.0)
    expected = [ChargeType.TRIVIAL] * 6
    expected[3] = expected[2] = ChargeType.LAMBDA
    assert charges(state) == expected


def test_lambda_absorbed_by_phi(gs22):
    # W_Λ W_Φ = W_Φ
    phi = apply_w(gs22, CreationKind.W_PHI, 0)
    both = apply_w(phi, CreationKind.W_LAMBDA, 0)
    assert (both - phi).norm() == pytest.approx(0.0, abs=1e-12)


def test_lambda_on_phi_pair_edge_is_invisible(gs22, lat22):
    qubit = phi_block(lat22)
    e14, e12 = qubit.pair_a.edge_ids[0], qubit.x_path.edge_ids[0]
    phi = apply_w(gs22, CreationKind.W_PHI, e14)
    with_lambda = apply_w(apply_w(phi, CreationKind.W_LAMBDA, e14), CreationKind.W_LAMBDA, e12)
    without = apply_w(phi, CreationKind.W_LAMBDA, e12)
    assert (with_lambda - without).norm() == pytest.approx(0.0, abs=1e-12)


def test_phi_chain_is_deformation_invariant(gs23, lat23):
    direct = path_between(lat23, 0, 1)
    around = Path(
        start=0,
        end=1,
        steps=(
            (lat23.vertical_edge(0, 0), Direction.WITH),
            (lat23.horizontal_edge(1, 0), Direction.WITH),
            (lat23.vertical_edge(0, 1), Direction.AGAINST),
        ),
    )
    a = w_phi_chain(gs23, direct)
    b = w_phi_chain(gs23, around)
    assert (a - b).norm() == pytest.approx(0.0, abs=1e-9)


def test_same_pair_fuses_to_vacuum(gs23, lat23):
    state = w_phi_chain(gs23, path_between(lat23, 0, 2)).normalize()
    probabilities = pair_charge_probabilities(state, 0, 2)
    assert probabilities[ChargeType.TRIVIAL] == pytest.approx(1.0)


def test_cross_pair_fusion_probabilities(gs22, lat22):
    state = w_phi_chain(gs22, path_between(lat22, 0, 1))
    state = w_phi_chain(state, path_between(lat22, 2, 3)).normalize()
    probabilities = pair_charge_probabilities(state, 0, 2)
    assert probabilities[ChargeType.TRIVIAL] == pytest.approx(0.25)
    assert probabilities[ChargeType.LAMBDA] == pytest.approx(0.25)
    assert probabilities[ChargeType.PHI] == pytest.approx(0.5)


def test_pair_measurement_collapses(gs22, lat22, rng):
    state = w_phi_chain(gs22, path_between(lat22, 0, 1))
    state = w_phi_chain(state, path_between(lat22, 2, 3)).normalize()
    label, probability, post = pair_charge_measure(state, 0, 2, rng)
    assert probability > 0
    assert post.norm() == pytest.approx(1.0)
    assert pair_charge_probabilities(post, 0, 2)[label] == pytest.approx(1.0)
    with pytest.raises(LatticeError):
        pair_charge_measure(state, 1, 1, rng)


def test_u_vertex_is_unitary_involution(lat22, rng):
    s = from_dense(lat22, random_dense(lat22, rng))
    once = u_vertex(s, 0)
    assert once.norm() == pytest.approx(1.0)
    assert (u_vertex(once, 0) - s).norm() == pytest.approx(0.0, abs=1e-9)


def test_u_vertex_maps_phi_pair_to_primed_pair(gs22, lat22):
    path = path_between(lat22, 0, 1)
    standard = w_phi_chain(gs22, path)
    primed = w_phi_chain(gs22, path, ChainFlavor.PRIMED)
    assert fidelity(u_vertex(standard, 0), primed) == pytest.approx(1.0)


def test_creation_can_annihilate(lat22):
    vacuum = basis_state(lat22, identity_config(lat22))
    with pytest.raises(StateError):
        apply_w(vacuum, CreationKind.W_PHI_PRIME, 0)


def test_anyon_pair_endpoints(lat22):
    path = path_between(lat22, 0, 1)
    pair = AnyonPair(kind=ChargeType.PHI, v_left=0, v_right=1, path=path)
    assert pair.flavor is ChainFlavor.STANDARD
    with pytest.raises(ValidationError):
        AnyonPair(kind=ChargeType.PHI, v_left=0, v_right=3, path=path)
    assert len(pair.path) == 1
