"""
D(S3) Memory Experiments CLI
실험 하위 명령: fusion-stats, suppression, distinguish, hadamard, ground-state-check

Configuration layers: model defaults < key=value file (--config) < flags.
Reports go to --out or stdout; the rich summary goes to stderr.
"""
import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple, Type

from dotenv import dotenv_values
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.table import Table

from app.experiments.campaigns import (
    DistinguishConfig,
    FusionConfig,
    GroundStateConfig,
    HadamardConfig,
    SuppressionConfig,
    run_distinguishability,
    run_error_suppression,
    run_fusion_stats,
    run_ground_state_check,
    run_hadamard_stats,
)
from app.experiments.report import ExperimentReport
from app.utils.config import settings
from app.utils.errors import SimulationError
from app.utils.logger import logger

console = Console(stderr=True)

Runner = Callable[[BaseModel, int], ExperimentReport]

COMMANDS: Dict[str, Tuple[Type[BaseModel], Runner, str]] = {
    "fusion-stats": (FusionConfig, run_fusion_stats, "Cross-fuse two Φ pairs and tally channels"),
    "suppression": (SuppressionConfig, run_error_suppression, "Logical flip rate against separation l"),
    "distinguish": (DistinguishConfig, run_distinguishability, "LOCC versus non-local discrimination"),
    "hadamard": (
        HadamardConfig,
        run_hadamard_stats,
        "Repeat-until-success Hadamard; a local Z removes the byproduct, so 1 or 2 rounds (mean 1.5)",
    ),
    "ground-state-check": (GroundStateConfig, run_ground_state_check, "Syndrome and energy of |gs⟩"),
}

# flag dest -> config field
FLAG_FIELDS = {
    "rows": "rows",
    "cols": "cols",
    "boundary": "boundary",
    "encoding": "encoding",
    "l": "l_values",
    "p": "p",
    "trials": "trials",
    "steps": "steps",
    "errors": "errors",
    "basis": "basis",
    "input": "input",
}


def read_config_file(path: Path) -> Dict[str, str]:
    """key=value 줄 (dotenv 문법: 따옴표, '#' 주석, 빈 줄 허용)"""
    if not path.is_file():
        raise SimulationError(f"Config file not found: {path}")
    values: Dict[str, str] = {}
    for key, value in dotenv_values(path, interpolate=False).items():
        if value is None:
            raise SimulationError(f"{path}: expected key=value, got {key!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ds3-memory", description="D(S3) quantum double memory experiments")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--rows", type=int)
        sub.add_argument("--cols", type=int)
        sub.add_argument("--boundary", choices=["open", "periodic"])
        sub.add_argument("--encoding", choices=["lambda", "phipair", "strong"])
        sub.add_argument("--l", help="Separation(s), comma separated")
        sub.add_argument("--p", type=float, help="Per-spin error probability")
        sub.add_argument("--trials", type=int)
        sub.add_argument("--steps", type=int)
        sub.add_argument("--errors", help="Error set, e.g. sign,phase,left:c")
        sub.add_argument("--basis", choices=["z", "x"])
        sub.add_argument("--input", choices=["0", "1", "+", "-"])
        sub.add_argument("--seed", type=int)
        sub.add_argument("--out", type=Path)
        sub.add_argument("--format", choices=["json", "csv"], default="json")
        sub.add_argument("--config", type=Path, help="key=value configuration file")
    return parser


def resolve_config(model: Type[BaseModel], args: argparse.Namespace) -> Tuple[BaseModel, int]:
    """(검증된 설정 모델, 시드)"""
    values: Dict[str, object] = read_config_file(args.config) if args.config else {}
    for dest, field in FLAG_FIELDS.items():
        flag = getattr(args, dest, None)
        if flag is not None:
            values[field] = flag
    if "l" in values:
        values["l_values"] = values.pop("l")
    seed = args.seed if args.seed is not None else int(values.pop("seed", settings.default_seed))
    values.pop("seed", None)
    unknown = sorted(set(values) - set(model.model_fields))
    for key in unknown:
        logger.warning(f"Ignoring setting {key!r}: not used by this experiment")
        values.pop(key)
    return model(**values), seed


def summary_table(report: ExperimentReport) -> Table:
    table = Table(title=f"{report.experiment} (seed {report.seed})")
    table.add_column("x", style="cyan")
    table.add_column("mean", justify="right")
    table.add_column("stderr", justify="right")
    table.add_column("n", justify="right")
    table.add_column("exact", justify="right", style="green")
    for point in report.points:
        exact = "" if point.exact is None else f"{point.exact:.6f}"
        table.add_row(str(point.x), f"{point.mean:.6f}", f"{point.stderr:.6f}", str(point.n), exact)
    return table


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    model, runner, _ = COMMANDS[args.command]
    try:
        config, seed = resolve_config(model, args)
        logger.info(f"Running {args.command} with seed {seed}")
        report = runner(config, seed)
    except (SimulationError, ValidationError) as e:
        logger.error(f"{args.command} failed: {e}")
        return 1

    if args.out:
        report.write(args.out, args.format)
    else:
        sys.stdout.write(report.render(args.format))
    if report.details:
        console.print(report.details)
    console.print(summary_table(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
