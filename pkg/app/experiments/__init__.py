"""Noise, decoding and Monte Carlo campaigns."""
from app.experiments.campaigns import (
    DistinguishConfig,
    FusionConfig,
    GroundStateConfig,
    HadamardConfig,
    SuppressionConfig,
    exact_flip_rate,
    run_distinguishability,
    run_error_suppression,
    run_fusion_stats,
    run_ground_state_check,
    run_hadamard_stats,
)
from app.experiments.noise import ErrorOp, NoiseModel, inject_noise
from app.experiments.report import ExperimentReport, ReportPoint

__all__ = [
    "DistinguishConfig",
    "ErrorOp",
    "ExperimentReport",
    "FusionConfig",
    "GroundStateConfig",
    "HadamardConfig",
    "NoiseModel",
    "ReportPoint",
    "SuppressionConfig",
    "exact_flip_rate",
    "inject_noise",
    "run_distinguishability",
    "run_error_suppression",
    "run_fusion_stats",
    "run_ground_state_check",
    "run_hadamard_stats",
]
