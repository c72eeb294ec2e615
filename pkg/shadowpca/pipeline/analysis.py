# shadowpca/pipeline/analysis.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from shadowpca.core.errors import SweepConfigError
from .config import ClassificationThresholds

DEFAULT_PROMINENCE = 0.02
MIN_PEAK_ROWS = 5

SYMMETRY_BREAKING = "symmetry-breaking"
TOPOLOGICAL = "topological"
MIXED = "mixed"


@dataclass(frozen=True)
class PeakResult:
    found: bool
    index: Optional[int] = None
    parameter: Optional[float] = None
    value: Optional[float] = None
    prominence: float = 0.0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def peak_detect(
    params: Sequence[float],
    values: Sequence[float],
    *,
    threshold: float = DEFAULT_PROMINENCE,
) -> PeakResult:
    """
    Interior local maximum with the largest prominence over the path endpoints.

    A local maximum is >= its left neighbour and > its right neighbour, so a
    plateau reports its last sample only when it drops afterwards.
    prominence = value - max(first, last). Below `threshold` -> no peak.
    """
    x = np.asarray(params, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise SweepConfigError("peak_detect needs equally long 1-D params and values.")
    if y.size < MIN_PEAK_ROWS:
        raise SweepConfigError(f"peak_detect needs at least {MIN_PEAK_ROWS} rows (got {y.size}).")

    base = max(y[0], y[-1])
    best: Optional[int] = None
    for i in range(1, y.size - 1):
        if not np.isfinite(y[i]):
            continue
        if y[i] >= y[i - 1] and y[i] > y[i + 1]:
            if best is None or y[i] > y[best]:
                best = i

    if best is None:
        return PeakResult(found=False)
    prominence = float(y[best] - base)
    if not prominence >= threshold:
        return PeakResult(found=False, prominence=max(prominence, 0.0))
    return PeakResult(found=True, index=best, parameter=float(x[best]), value=float(y[best]), prominence=prominence)


def classify_transition(ratio: float, thresholds: ClassificationThresholds | None = None) -> str:
    t = thresholds or ClassificationThresholds()
    if ratio >= t.symmetry_breaking:
        return SYMMETRY_BREAKING
    if ratio <= t.topological:
        return TOPOLOGICAL
    return MIXED


@dataclass(frozen=True)
class PeakReport:
    mode: str
    param: str
    peak: PeakResult
    ratio_at_peak: Optional[float]
    classification: Optional[str]

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "param": self.param,
            "peak": self.peak.as_dict(),
            "ratio_at_peak": self.ratio_at_peak,
            "classification": self.classification,
        }


def peak_report(
    table,
    mode: str,
    param: str,
    *,
    column: str = "lambda1",
    threshold: float = DEFAULT_PROMINENCE,
    thresholds: ClassificationThresholds | None = None,
) -> PeakReport:
    """Peak of `column` along a 1-D sweep and the transition class at that point.

    `table` is anything with column(name, mode): a SweepResult or a ResultsTable.
    """
    x = table.column(param, mode)
    peak = peak_detect(x, table.column(column, mode), threshold=threshold)
    ratio_at = None
    label = None
    if peak.found:
        r = table.column("ratio", mode)[peak.index]
        if np.isfinite(r):
            ratio_at = float(r)
            label = classify_transition(ratio_at, thresholds)
    return PeakReport(mode=mode, param=param, peak=peak, ratio_at_peak=ratio_at, classification=label)
