# shadowpca/pipeline/__init__.py
from .grids import (
    CLUSTER_EDGE_MIDPOINTS,
    LinearGrid,
    PathGrid,
    RectGrid,
    TernaryGrid,
    cluster_edge_midpoints,
    parse_grid,
    ternary_grid,
)
from .config import (
    DEFAULT_K,
    DEFAULT_SHOTS,
    MODES,
    ClassificationThresholds,
    SweepSpec,
    load_sweep_spec,
)
from .runner import SweepResult, SweepRow, evaluate_point, results_header, run_sweep, validate_spec
from .results import ResultsTable
from .analysis import PeakReport, PeakResult, classify_transition, peak_detect, peak_report
from .render import (
    RENDER_KINDS,
    SVG,
    lambda_series,
    render_covariance_heatmap,
    render_grid_heatmap,
    render_line,
    render_scatter,
    render_ternary_heatmap,
)
from .store import sweep_paths

__all__ = [
    "CLUSTER_EDGE_MIDPOINTS",
    "LinearGrid",
    "PathGrid",
    "RectGrid",
    "TernaryGrid",
    "cluster_edge_midpoints",
    "parse_grid",
    "ternary_grid",
    "DEFAULT_K",
    "DEFAULT_SHOTS",
    "MODES",
    "ClassificationThresholds",
    "SweepSpec",
    "load_sweep_spec",
    "SweepResult",
    "SweepRow",
    "evaluate_point",
    "results_header",
    "run_sweep",
    "validate_spec",
    "ResultsTable",
    "PeakReport",
    "PeakResult",
    "classify_transition",
    "peak_detect",
    "peak_report",
    "RENDER_KINDS",
    "SVG",
    "lambda_series",
    "render_covariance_heatmap",
    "render_grid_heatmap",
    "render_line",
    "render_scatter",
    "render_ternary_heatmap",
    "sweep_paths",
]
