"""
잡음, 복호기, 몬테카를로 캠페인 테스트
"""
import json

import numpy as np
import pytest
from pydantic import ValidationError

from app.experiments import (
    DistinguishConfig,
    ErrorOp,
    FusionConfig,
    GroundStateConfig,
    HadamardConfig,
    NoiseModel,
    SuppressionConfig,
    exact_flip_rate,
    inject_noise,
    run_distinguishability,
    run_error_suppression,
    run_fusion_stats,
    run_ground_state_check,
    run_hadamard_stats,
)
from app.experiments.campaigns import SuppressionStrip, projector_probability, trial_streams
from app.experiments.decoder import decode, match_defects
from app.experiments.noise import ErrorKind, apply_errors
from app.codes import EncodingKind
from app.lattice.grid import path_between
from app.model.anyons import pair_charge_probabilities, w_phi_chain
from app.model.quantum_double import ChargeType, ground_state, measure_syndrome
from app.utils.errors import EncodingError, SimulationError


def point(report, x):
    return next(pt for pt in report.points if pt.x == x)


# -- noise --------------------------------------------------------------------


def test_error_op_parsing():
    assert ErrorOp.parse("left:c").label == "left:c"
    assert ErrorOp.parse("sign").kind is ErrorKind.SIGN_FLIP
    with pytest.raises(SimulationError):
        ErrorOp.parse("right:e")
    with pytest.raises(SimulationError):
        ErrorOp.parse("phase:t")
    with pytest.raises(ValidationError):
        NoiseModel(p=1.5)
    assert [op.label for op in NoiseModel(errors="sign,left:t").errors] == ["sign", "left:t"]


def test_noise_extremes(gs22):
    untouched, log = inject_noise(gs22, NoiseModel(p=0.0), 3)
    assert log == []
    assert (untouched - gs22).norm() == pytest.approx(0.0)

    flipped, log = inject_noise(gs22, NoiseModel(p=1.0, steps=2), 3)
    assert len(log) == 2 * gs22.lattice.num_edges
    assert (flipped - gs22).norm() == pytest.approx(0.0, abs=1e-12)


def test_single_sign_flip_syndrome(gs22, rng):
    state, log = apply_errors(gs22, [(0, 1, ErrorOp.parse("sign"))])
    assert [entry.op for entry in log] == ["sign"]
    syndrome, _ = measure_syndrome(state, rng)
    assert syndrome.charged(ChargeType.LAMBDA) == list(gs22.lattice.edge_vertices(1))


def test_multiplication_error_keeps_norm(gs22):
    state, _ = apply_errors(gs22, [(0, 0, ErrorOp.parse("left:c")), (0, 3, ErrorOp.parse("phase"))])
    assert state.norm() == pytest.approx(1.0)


# -- decoder ------------------------------------------------------------------


def test_matching_prefers_short_pairs(lat23):
    assert match_defects(lat23, []) == []
    assert match_defects(lat23, [0, 1, 5, 2]) == [(0, 1), (2, 5)]
    with pytest.raises(SimulationError):
        match_defects(lat23, [0, 1, 2])


def test_matching_uses_anchors(lat23):
    anchors = (3, 5, 2, 0)
    # 1 은 거리 1 인 앵커 0 (동률이면 작은 번호), 4 와 1 은 서로 짝짓는 편이 가볍다
    assert match_defects(lat23, [1], anchors) == [(1, 0)]
    assert match_defects(lat23, [1, 4], anchors) == [(1, 4)]
    assert match_defects(lat23, [4], anchors) == [(4, 3)]


def test_decode_removes_visible_lambdas(gs23, rng):
    state, _ = apply_errors(gs23, [(0, 0, ErrorOp.parse("sign")), (0, 1, ErrorOp.parse("sign"))])
    syndrome, state = measure_syndrome(state, rng)
    assert syndrome.charged(ChargeType.LAMBDA) == [0, 2]
    corrected, paths = decode(state, syndrome)
    assert len(paths) == 1
    after, _ = measure_syndrome(corrected, rng)
    assert after.charged(ChargeType.LAMBDA) == []


# -- campaigns ----------------------------------------------------------------


def test_trial_streams_are_reproducible():
    a = [g.random() for g in trial_streams(7, 3)]
    b = [g.random() for g in trial_streams(7, 3)]
    c = [g.random() for g in trial_streams(7, 3, point=1)]
    assert a == b
    assert a != c
    assert len(set(a)) == 3


def test_fusion_stats(within_band):
    report = run_fusion_stats(FusionConfig(trials=2000), seed=1)
    for label, expected in (("cross:1", 0.25), ("cross:L", 0.25), ("cross:P", 0.5)):
        pt = point(report, label)
        assert pt.exact == pytest.approx(expected)
        assert within_band(pt.mean, expected, 2000)
    assert point(report, "same:1").mean == 1.0
    assert report.wall_ms == 0


def test_fusion_exact_values_match_channel_probabilities(lat22):
    state = ground_state(lat22)
    state = w_phi_chain(state, path_between(lat22, 0, 1))
    state = w_phi_chain(state, path_between(lat22, 2, 3)).normalize()
    channels = pair_charge_probabilities(state, 0, 2)
    for charge, expected in ((ChargeType.TRIVIAL, 0.25), (ChargeType.LAMBDA, 0.25), (ChargeType.PHI, 0.5)):
        assert projector_probability(state, [0, 2], charge) == pytest.approx(expected)
        assert channels[charge] == pytest.approx(expected)
    assert projector_probability(state, [0, 1], ChargeType.TRIVIAL) == pytest.approx(1.0)


def test_distinguishability(within_band):
    phi = run_distinguishability(DistinguishConfig(trials=300), seed=2)
    assert point(phi, "locc").mean == 1.0
    assert point(phi, "nonlocal").mean == 1.0
    strong = run_distinguishability(DistinguishConfig(encoding=EncodingKind.STRONG, trials=1000), seed=2)
    assert within_band(point(strong, "locc").mean, 0.5, 1000)
    assert point(strong, "nonlocal").mean == 1.0
    with pytest.raises(EncodingError):
        run_distinguishability(DistinguishConfig(encoding=EncodingKind.LAMBDA_ONLY, trials=1), seed=2)


@pytest.mark.parametrize("state", ["0", "+"])
def test_hadamard_stats(state, within_band):
    report = run_hadamard_stats(HadamardConfig(trials=1000, input=state), seed=3)
    assert report.details["fidelity_min"] >= 1 - 1e-9
    success = point(report, "round1_success").mean
    assert within_band(success, 0.5, 1000)
    assert point(report, "rounds").mean == pytest.approx(2 - success)
    with pytest.raises(ValidationError):
        HadamardConfig(input="2")


@pytest.mark.slow
def test_hadamard_stats_phi_pair():
    report = run_hadamard_stats(HadamardConfig(encoding=EncodingKind.PHI_PAIR, trials=50, input="1"), seed=3)
    assert report.details["fidelity_min"] >= 1 - 1e-9


def test_exact_flip_rate_single_block():
    config = SuppressionConfig(p=0.1)
    assert exact_flip_rate(config, 1) == pytest.approx(2 * 0.1 * 0.9)
    with pytest.raises(SimulationError):
        exact_flip_rate(SuppressionConfig(errors="left:c"), 1)


def test_suppression_without_noise_is_perfect():
    report = run_error_suppression(SuppressionConfig(l_values=[1, 2], p=0.0, trials=50), seed=4)
    assert [pt.mean for pt in report.points] == [0.0, 0.0]
    assert point(report, 1).exact == pytest.approx(0.0)


def test_suppression_l1_matches_exact(within_band):
    report = run_error_suppression(SuppressionConfig(l_values="1", p=0.05, trials=2000), seed=5)
    pt = point(report, 1)
    assert pt.exact == pytest.approx(2 * 0.05 * 0.95)
    assert within_band(pt.mean, pt.exact, 2000)


def test_suppression_strip_layout():
    strip = SuppressionStrip(SuppressionConfig(), 2)
    assert strip.lattice.num_edges == 7
    assert strip.qubit.separation == 1
    assert len(strip.qubit.x_path) == 2
    assert strip.anchors == strip.qubit.vertices


def test_suppression_single_error_patterns():
    strip = SuppressionStrip(SuppressionConfig(), 2)
    op = ErrorOp.parse("sign")
    rng = np.random.default_rng(0)
    lat = strip.lattice
    flipped = {e for e in range(lat.num_edges) if strip.trajectory([(0, e, op)], rng)[0]}
    # 아래/위 줄의 오른쪽 변은 동률 앵커 때문에 잘못 교정된다
    assert flipped == {lat.horizontal_edge(0, 1), lat.horizontal_edge(1, 1)}


def test_exact_flip_rate_is_flat_from_one_to_two():
    config = SuppressionConfig(p=0.1)
    single = exact_flip_rate(config, 1)
    assert exact_flip_rate(config, 2) == pytest.approx(single)
    assert single == pytest.approx(2 * 0.1 * 0.9)


@pytest.mark.slow
def test_suppression_improves_with_separation():
    report = run_error_suppression(SuppressionConfig(l_values=[1, 2, 3], p=0.05, trials=600), seed=6)
    rates = [point(report, l) for l in (1, 2, 3)]
    for shorter, longer in zip(rates, rates[1:]):
        assert longer.mean <= shorter.mean + 3 * np.hypot(shorter.stderr, longer.stderr)
    assert rates[1].exact == pytest.approx(rates[0].exact)


def test_suppression_is_deterministic():
    config = SuppressionConfig(l_values=[1], p=0.2, trials=200)
    assert run_error_suppression(config, seed=9).to_json() == run_error_suppression(config, seed=9).to_json()


def test_ground_state_check_report():
    report = run_ground_state_check(GroundStateConfig(rows=2, cols=3), seed=0)
    assert point(report, "energy").mean == pytest.approx(-8.0)
    assert point(report, "trivial_syndrome").mean == 1.0
    assert report.details["configurations"] == 6**5
    data = json.loads(report.to_json())
    assert set(data) == {"experiment", "config", "seed", "points", "wall_ms", "details"}
    assert report.to_csv().splitlines()[0] == "experiment,seed,x,mean,stderr,n"
