"""
Experiment Reports
실험 결과 JSON/CSV 직렬화
"""
import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field

from app.utils.logger import logger

PointLabel = Union[int, float, str]


class ReportPoint(BaseModel):
    x: PointLabel
    mean: float
    stderr: float
    n: int
    exact: Optional[float] = Field(default=None, description="Exact reference value, when one exists")


class ExperimentReport(BaseModel):
    """experiment / config / seed / points / wall_ms"""

    experiment: str
    config: Dict[str, Any]
    seed: int
    points: List[ReportPoint] = Field(default_factory=list)
    wall_ms: int = 0
    details: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["experiment", "seed", "x", "mean", "stderr", "n"])
        for point in self.points:
            writer.writerow([self.experiment, self.seed, point.x, repr(point.mean), repr(point.stderr), point.n])
        return buffer.getvalue()

    def render(self, fmt: str = "json") -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"Unknown report format: {fmt}")

    def write(self, path: Union[str, Path], fmt: str = "json") -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.render(fmt), encoding="utf-8")
        logger.info(f"Wrote {self.experiment} report to {target}")
        return target


def summarize(x: PointLabel, samples: Sequence[float], exact: Optional[float] = None) -> ReportPoint:
    """표본 평균과 표준 오차"""
    values = np.asarray(samples, dtype=float)
    n = int(values.size)
    if n == 0:
        return ReportPoint(x=x, mean=0.0, stderr=0.0, n=0, exact=exact)
    stderr = float(values.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return ReportPoint(x=x, mean=float(values.mean()), stderr=stderr, n=n, exact=exact)
