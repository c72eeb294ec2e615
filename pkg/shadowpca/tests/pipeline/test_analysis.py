from __future__ import annotations

from pathlib import Path

import pytest

from shadowpca.core.errors import SweepConfigError
from shadowpca.pipeline import ResultsTable, results_header
from shadowpca.pipeline.analysis import (
    MIXED,
    SYMMETRY_BREAKING,
    TOPOLOGICAL,
    classify_transition,
    peak_detect,
    peak_report,
)
from shadowpca.pipeline.config import ClassificationThresholds
from shadowpca.pipeline.sinks import write_rows_csv


def test_single_interior_peak() -> None:
    p = peak_detect([0, 1, 2, 3, 4], [1, 1, 3, 1, 1])
    assert p.found
    assert p.index == 2
    assert p.parameter == 2.0
    assert p.prominence == pytest.approx(2.0)


def test_flat_and_monotone_have_no_peak() -> None:
    assert not peak_detect(range(5), [1.0] * 5).found
    assert not peak_detect(range(5), [1, 2, 3, 4, 5]).found


def test_prominence_is_measured_against_higher_endpoint() -> None:
    p = peak_detect(range(5), [0.5, 1.0, 2.0, 1.0, 1.8])
    assert p.prominence == pytest.approx(0.2)
    low = peak_detect(range(5), [1.0, 1.01, 1.0, 1.0, 1.0])
    assert not low.found
    assert low.prominence == pytest.approx(0.01)
    assert peak_detect(range(5), [1.0, 1.01, 1.0, 1.0, 1.0], threshold=0.005).found


def test_highest_local_maximum_wins_and_plateau_reports_last_sample() -> None:
    assert peak_detect(range(6), [0, 3, 0, 5, 0, 0]).index == 3
    assert peak_detect(range(5), [0, 2, 2, 0, 0]).index == 2


def test_peak_detect_input_errors() -> None:
    with pytest.raises(SweepConfigError, match="at least 5"):
        peak_detect(range(4), [0, 1, 0, 0])
    with pytest.raises(SweepConfigError):
        peak_detect(range(5), [0, 1, 0])


@pytest.mark.parametrize(
    "ratio,label",
    [(1.63, SYMMETRY_BREAKING), (1.5, SYMMETRY_BREAKING), (1.01, TOPOLOGICAL), (1.15, TOPOLOGICAL), (1.26, MIXED)],
)
def test_classify_transition(ratio: float, label: str) -> None:
    assert classify_transition(ratio) == label


def test_classify_is_monotone_in_ratio() -> None:
    order = {TOPOLOGICAL: 0, MIXED: 1, SYMMETRY_BREAKING: 2}
    labels = [order[classify_transition(1.0 + 0.01 * i)] for i in range(80)]
    assert labels == sorted(labels)


def test_custom_thresholds() -> None:
    t = ClassificationThresholds(symmetry_breaking=2.0, topological=1.3)
    assert classify_transition(1.63, t) == MIXED
    assert classify_transition(1.26, t) == TOPOLOGICAL


def test_peak_report_from_results_file(tmp_path: Path) -> None:
    header = results_header(["h"], 2)
    lam1 = [0.60, 0.62, 0.80, 0.65, 0.61]
    rows = [
        [i, 0.5 + 0.25 * i, "oracle-exact", l1, 0.4, l1 / 0.4, 2.0, False, True, None, None]
        for i, l1 in enumerate(lam1)
    ]
    table = ResultsTable.load(write_rows_csv(tmp_path / "results.csv", header, rows))
    rep = peak_report(table, "oracle-exact", "h")
    assert rep.peak.found
    assert rep.peak.parameter == pytest.approx(1.0)
    assert rep.ratio_at_peak == pytest.approx(2.0)
    assert rep.classification == SYMMETRY_BREAKING
    assert rep.as_dict()["peak"]["index"] == 2
