"""
Monte Carlo Campaigns
융합 통계, 판별 가능성, 하다마드 RUS, 오류 억제 실험

Every campaign derives one independent numpy Generator per trial from
SeedSequence([seed, point]).spawn(trials), so a (config, seed) pair fixes
the report exactly.
"""
import time
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator

from app.codes.encoding import CodeRegister, EncodingKind, LogicalQubit, encode, encode_state, lambda_qubit, phi_block
from app.codes.gates import (
    finish_hadamard,
    hadamard_round,
    locc_parity_test,
    logical_bit,
    logical_x_branches,
    logical_z_branches,
    measure_logical_z,
)
from app.experiments.decoder import decode
from app.experiments.noise import NoiseModel, apply_errors, sample_errors
from app.experiments.report import ExperimentReport, ReportPoint, summarize
from app.lattice.grid import Boundary, Lattice, build_grid, path_between
from app.model.anyons import w_phi_chain
from app.model.quantum_double import (
    ChargeType,
    branch_probabilities,
    charge_branches,
    charge_coefficients,
    energy,
    ground_state,
    measure_syndrome,
    vertex_combination,
)
from app.state.state_vector import StateVector, fidelity, sample_branch
from app.utils.config import settings
from app.utils.errors import CorruptionError, EncodingError, LatticeError, SimulationError
from app.utils.logger import logger

DETERMINISTIC = 1 - 1e-9


def trial_streams(seed: int, trials: int, point: int = 0) -> List[np.random.Generator]:
    """시드와 측정점 번호로부터 시행별 독립 난수 스트림"""
    children = np.random.SeedSequence([seed, point]).spawn(trials)
    return [np.random.default_rng(child) for child in children]


class _Timer:
    def __init__(self):
        self.start = time.perf_counter()

    def elapsed_ms(self) -> int:
        if not settings.report_wall_time:
            return 0
        return int(round((time.perf_counter() - self.start) * 1000))


# -- configuration ------------------------------------------------------------


class LatticeConfig(BaseModel):
    rows: int = Field(2, ge=1, description="Vertex rows")
    cols: int = Field(2, ge=1, description="Vertex columns")
    boundary: Boundary = Field(Boundary.OPEN, description="open or periodic")

    def build(self) -> Lattice:
        return build_grid(self.rows, self.cols, self.boundary)


class FusionConfig(LatticeConfig):
    trials: int = Field(default_factory=lambda: settings.default_trials, ge=1)


class DistinguishConfig(LatticeConfig):
    encoding: EncodingKind = EncodingKind.PHI_PAIR
    trials: int = Field(default_factory=lambda: settings.default_trials, ge=1)


class HadamardConfig(BaseModel):
    encoding: EncodingKind = EncodingKind.LAMBDA_ONLY
    trials: int = Field(default_factory=lambda: settings.default_trials, ge=1)
    input: str = Field("0", description="Input logical state: 0, 1, + or -")

    @field_validator("input")
    @classmethod
    def _check_input(cls, value: str) -> str:
        if value not in INPUT_STATES:
            raise ValueError(f"input must be one of {sorted(INPUT_STATES)}")
        return value


class SuppressionConfig(BaseModel):
    l_values: List[int] = Field(default_factory=lambda: [1, 2, 3], min_length=1)
    p: float = Field(0.05, ge=0.0, le=1.0)
    trials: int = Field(1000, ge=1)
    encoding: EncodingKind = EncodingKind.PHI_PAIR
    basis: str = Field("z", description="Readout basis: z (fusion channel) or x")
    errors: List[str] = Field(default_factory=lambda: ["sign"], min_length=1)
    steps: int = Field(1, ge=0)
    exact_max_edges: int = Field(7, ge=0, description="Largest strip solved by exhaustive enumeration")

    @field_validator("l_values", mode="before")
    @classmethod
    def _parse_l_values(cls, value):
        if isinstance(value, (int, str)):
            value = [int(part) for part in str(value).split(",") if part.strip()]
        if any(int(l) < 1 for l in value):
            raise ValueError("separations must be >= 1")
        return value

    @field_validator("errors", mode="before")
    @classmethod
    def _parse_errors(cls, value):
        if isinstance(value, str):
            value = [part.strip() for part in value.split(",") if part.strip()]
        return value

    @field_validator("basis")
    @classmethod
    def _check_basis(cls, value: str) -> str:
        if value not in ("z", "x"):
            raise ValueError("basis must be 'z' or 'x'")
        return value

    def noise(self) -> NoiseModel:
        return NoiseModel(p=self.p, errors=self.errors, steps=self.steps)


class GroundStateConfig(LatticeConfig):
    pass


# -- fusion statistics --------------------------------------------------------


def _tally(labels: Sequence, outcome) -> List[float]:
    return [1.0 if label == outcome else 0.0 for label in labels]


def projector_probability(state: StateVector, vertices: Sequence[int], charge: ChargeType) -> float:
    """⟨s|P_A|s⟩ / ⟨s|s⟩, P_A 를 영역 꼭짓점 연산자의 선형 결합으로 직접 적용"""
    projected = vertex_combination(state, vertices, charge_coefficients(charge))
    return float(projected.norm() ** 2 / state.norm() ** 2)


def run_fusion_stats(config: FusionConfig, seed: int) -> ExperimentReport:
    """두 독립 Φ 쌍을 만들고 교차 융합 채널 빈도 집계"""
    timer = _Timer()
    lat = config.build()
    if lat.rows < 2 or lat.cols < 2:
        raise LatticeError("Fusion statistics need at least a 2x2 lattice")
    a0, a1 = lat.vertex_id(0, 0), lat.vertex_id(0, 1)
    b0, b1 = lat.vertex_id(1, 0), lat.vertex_id(1, 1)
    state = ground_state(lat)
    state = w_phi_chain(state, path_between(lat, a0, a1))
    state = w_phi_chain(state, path_between(lat, b0, b1)).normalize()

    cross = branch_probabilities(state, charge_branches(state, [a0, b0]))
    same = branch_probabilities(state, charge_branches(state, [a0, a1]))
    cross_labels, same_labels = [], []
    for rng in trial_streams(seed, config.trials):
        cross_labels.append(sample_branch(cross, rng).label)
        same_labels.append(sample_branch(same, rng).label)

    points = [
        summarize(
            f"cross:{charge.value}",
            _tally(cross_labels, charge),
            exact=projector_probability(state, [a0, b0], charge),
        )
        for charge, _, _ in cross
    ]
    points.append(
        summarize(
            "same:1",
            _tally(same_labels, ChargeType.TRIVIAL),
            exact=projector_probability(state, [a0, a1], ChargeType.TRIVIAL),
        )
    )
    logger.info(f"Fusion statistics over {config.trials} trials: " + ", ".join(f"{pt.x}={pt.mean:.4f}" for pt in points))
    return ExperimentReport(
        experiment="fusion-stats",
        config=config.model_dump(mode="json"),
        seed=seed,
        points=points,
        wall_ms=timer.elapsed_ms(),
    )


# -- distinguishability -------------------------------------------------------


def run_distinguishability(config: DistinguishConfig, seed: int) -> ExperimentReport:
    """무작위 |0⟩/|1⟩ 에 LOCC 홀짝 판별과 비국소 융합 판별 적용"""
    timer = _Timer()
    if config.encoding is EncodingKind.LAMBDA_ONLY:
        raise EncodingError("Distinguishability needs a four-anyon encoding (phipair or strong)")
    lat = config.build()
    qubit = phi_block(lat, config.encoding)
    prepared = {}
    for bit in (0, 1):
        reg = CodeRegister(lat, [qubit])
        prepared[bit] = encode(reg, 0, bit)

    locc, nonlocal_ = [], []
    for rng in trial_streams(seed, config.trials):
        bit = int(rng.integers(2))
        parity_a, _, _ = locc_parity_test(prepared[bit].copy(), 0, rng)
        locc.append(1.0 if (1 if parity_a < 0 else 0) == bit else 0.0)
        guess, _ = measure_logical_z(prepared[bit].copy(), 0, rng)
        nonlocal_.append(1.0 if guess == bit else 0.0)

    points = [summarize("locc", locc), summarize("nonlocal", nonlocal_)]
    logger.info(f"{config.encoding.value} distinguishability: LOCC {points[0].mean:.4f}, non-local {points[1].mean:.4f}")
    return ExperimentReport(
        experiment="distinguish",
        config=config.model_dump(mode="json"),
        seed=seed,
        points=points,
        wall_ms=timer.elapsed_ms(),
    )


# -- Hadamard -----------------------------------------------------------------

_H = 1 / np.sqrt(2)
INPUT_STATES: Dict[str, Tuple[complex, complex]] = {
    "0": (1.0, 0.0),
    "1": (0.0, 1.0),
    "+": (_H, _H),
    "-": (_H, -_H),
}


def hadamard_layout(kind: EncodingKind) -> Tuple[Lattice, List[LogicalQubit]]:
    """(격자, [데이터 큐비트, 보조 큐비트])"""
    kind = EncodingKind(kind)
    if kind is EncodingKind.LAMBDA_ONLY:
        lat = build_grid(2, 2)
        return lat, [lambda_qubit(lat, 0, 1), lambda_qubit(lat, 2, 3)]
    if kind is EncodingKind.PHI_PAIR:
        lat = build_grid(2, 4)
        return lat, [phi_block(lat, kind, origin=(1, 0)), phi_block(lat, kind, origin=(1, 2))]
    raise EncodingError("Hadamard by repeat-until-success needs LambdaOnly or PhiPair qubits")


def hadamard_reference(lat: Lattice, qubits: Sequence[LogicalQubit], outcome: int, amplitudes) -> CodeRegister:
    """측정 결과 outcome 과 H|ψ⟩ 를 담은 기대 레지스터"""
    alpha, beta = amplitudes
    reference = CodeRegister(lat, qubits)
    encode(reference, 0, outcome)
    return encode_state(reference, 1, (_H * (alpha + beta), _H * (alpha - beta)))


def run_hadamard_stats(config: HadamardConfig, seed: int) -> ExperimentReport:
    """라운드 수 분포와 매 시행의 최종 충실도"""
    timer = _Timer()
    lat, qubits = hadamard_layout(config.encoding)
    amplitudes = INPUT_STATES[config.input]
    reg = CodeRegister(lat, qubits)
    encode_state(reg, 0, amplitudes)
    hadamard_round(reg, 0, 1)
    branches = logical_z_branches(reg, 0)

    finished: Dict[int, Tuple[int, float]] = {}
    rounds, success, fidelities = [], [], []
    for rng in trial_streams(seed, config.trials):
        result = sample_branch(branches, rng)
        outcome = logical_bit(result.label, result.probability, 0)
        if outcome not in finished:
            post = reg.copy()
            post.state = result.state
            used = finish_hadamard(post, 1, outcome)
            reference = hadamard_reference(lat, qubits, outcome, amplitudes)
            finished[outcome] = (used, fidelity(post.state, reference.state))
        used, fid = finished[outcome]
        rounds.append(used)
        success.append(1.0 if outcome == 0 else 0.0)
        fidelities.append(fid)

    points = [
        summarize("rounds", rounds),
        summarize("round1_success", success, exact=0.5),
        summarize("fidelity", fidelities, exact=1.0),
    ]
    logger.info(f"Hadamard: mean rounds {points[0].mean:.4f}, min fidelity {min(fidelities):.12f}")
    return ExperimentReport(
        experiment="hadamard",
        config=config.model_dump(mode="json"),
        seed=seed,
        points=points,
        wall_ms=timer.elapsed_ms(),
        details={"fidelity_min": float(min(fidelities))},
    )


# -- error suppression --------------------------------------------------------


class SuppressionStrip:
    """2 x (l+1) 띠 위의 인코딩된 큐비트와 결정적 궤적 캐시"""

    def __init__(self, config: SuppressionConfig, l: int):
        self.config = config
        self.l = l
        self.lattice = build_grid(2, l + 1)
        self.qubit = self._layout()
        self.anchors: Tuple[int, ...] = self.qubit.vertices if self.qubit.kind.uses_phi_pairs else ()
        self.noise = config.noise()
        self.prepared = CodeRegister(self.lattice, [self.qubit])
        if config.basis == "z":
            encode(self.prepared, 0, 0)
        else:
            encode_state(self.prepared, 0, INPUT_STATES["+"])
        self.memo: Dict[tuple, bool] = {}

    def _layout(self) -> LogicalQubit:
        lat = self.lattice
        if self.config.encoding is EncodingKind.LAMBDA_ONLY:
            return lambda_qubit(lat, lat.vertex_id(1, 0), lat.vertex_id(1, self.l))
        return phi_block(lat, self.config.encoding, origin=(1, 0), pair_span=(-1, 0), x_span=(0, self.l))

    def trajectory(self, events, rng) -> Tuple[bool, bool]:
        """(논리 오류 여부, 모든 측정이 결정적이었는지)"""
        state, _ = apply_errors(self.prepared.state, events)
        syndrome, state = measure_syndrome(state, rng)
        deterministic = syndrome.probability >= DETERMINISTIC
        state, _ = decode(state, syndrome, self.anchors)
        reg = self.prepared.copy()
        reg.state = state
        if self.config.basis == "z":
            result = sample_branch(logical_z_branches(reg, 0), rng)
            try:
                flipped = logical_bit(result.label, result.probability, 0) == 1
            except CorruptionError:
                flipped = True
        else:
            result = sample_branch(logical_x_branches(reg, 0), rng)
            flipped = result.label == -1
        return flipped, deterministic and result.probability >= DETERMINISTIC

    def trial(self, rng: np.random.Generator) -> bool:
        events = sample_errors(self.lattice.num_edges, self.noise, rng)
        key = tuple((step, e, op.label) for step, e, op in events)
        if key in self.memo:
            return self.memo[key]
        flipped, deterministic = self.trajectory(events, rng)
        if deterministic:
            self.memo[key] = flipped
        return flipped


def exact_flip_rate(config: SuppressionConfig, l: int) -> float:
    """단일 SignFlip 오류 집합, 1 스텝에서 모든 오류 패턴을 열거한 정확한 논리 오류율"""
    noise = config.noise()
    if not (noise.sign_flip_only and len(noise.errors) == 1 and noise.steps == 1):
        raise SimulationError("Exhaustive flip rate needs a single SignFlip error and one step")
    strip = SuppressionStrip(config, l)
    num_edges = strip.lattice.num_edges
    op = noise.errors[0]
    rng = np.random.default_rng(0)
    rate = 0.0
    for pattern in product((0, 1), repeat=num_edges):
        events = [(0, e, op) for e, hit in enumerate(pattern) if hit]
        flipped, deterministic = strip.trajectory(events, rng)
        if not deterministic:
            raise SimulationError("Exhaustive flip rate needs deterministic trajectories")
        if flipped:
            k = len(events)
            rate += config.p**k * (1 - config.p) ** (num_edges - k)
    return float(rate)


def run_error_suppression(config: SuppressionConfig, seed: int) -> ExperimentReport:
    """분리 거리 l 별 잡음 -> 신드롬 -> 복호 -> 논리 판독 오류율"""
    timer = _Timer()
    points: List[ReportPoint] = []
    for index, l in enumerate(config.l_values):
        strip = SuppressionStrip(config, l)
        flips = [1.0 if strip.trial(rng) else 0.0 for rng in trial_streams(seed, config.trials, index)]
        exact: Optional[float] = None
        noise = strip.noise
        if (
            strip.lattice.num_edges <= config.exact_max_edges
            and noise.sign_flip_only
            and len(noise.errors) == 1
            and noise.steps == 1
        ):
            exact = exact_flip_rate(config, l)
        point = summarize(l, flips, exact=exact)
        logger.info(
            f"Suppression l={l}: flip rate {point.mean:.4f} ± {point.stderr:.4f} "
            f"({len(strip.memo)} cached trajectories)"
        )
        points.append(point)
    return ExperimentReport(
        experiment="suppression",
        config=config.model_dump(mode="json"),
        seed=seed,
        points=points,
        wall_ms=timer.elapsed_ms(),
    )


# -- ground state check -------------------------------------------------------


def run_ground_state_check(config: GroundStateConfig, seed: int) -> ExperimentReport:
    """바닥 상태의 신드롬과 에너지"""
    timer = _Timer()
    lat = config.build()
    state = ground_state(lat)
    syndrome, _ = measure_syndrome(state, np.random.default_rng(seed))
    trivial = all(c is ChargeType.TRIVIAL for c in syndrome.vertices) and all(syndrome.plaquettes)
    points = [
        ReportPoint(x="energy", mean=energy(state), stderr=0.0, n=1,
                    exact=-float(lat.num_vertices + lat.num_plaquettes)),
        ReportPoint(x="trivial_syndrome", mean=1.0 if trivial else 0.0, stderr=0.0, n=1, exact=1.0),
    ]
    return ExperimentReport(
        experiment="ground-state-check",
        config=config.model_dump(mode="json"),
        seed=seed,
        points=points,
        wall_ms=timer.elapsed_ms(),
        details={"syndrome": syndrome.to_json_dict(), "configurations": len(state)},
    )
