# shadowpca/pipeline/grids.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

from shadowpca.core.errors import SweepConfigError

Point = Dict[str, float]


def ternary_grid(resolution: int, total: float) -> List[Tuple[float, float, float]]:
    """
    All (i, j, k) * total/resolution with nonnegative integers i + j + k = resolution.

    Ordered by decreasing i, then decreasing j: the first corner comes first.
    """
    r = int(resolution)
    if r < 1:
        raise SweepConfigError(f"ternary resolution must be >= 1 (got {resolution}).")
    if not total > 0:
        raise SweepConfigError(f"ternary total must be > 0 (got {total}).")
    step = float(total) / r
    out = []
    for i in range(r, -1, -1):
        for j in range(r - i, -1, -1):
            k = r - i - j
            out.append((i * step, j * step, k * step))
    return out


@dataclass(frozen=True)
class LinearGrid:
    param: str
    start: float
    stop: float
    steps: int

    kind = "linear"

    def __post_init__(self) -> None:
        if int(self.steps) < 2:
            raise SweepConfigError(f"linear grid needs steps >= 2 (got {self.steps}).")

    @property
    def param_names(self) -> Tuple[str, ...]:
        return (self.param,)

    def points(self) -> List[Point]:
        return [{self.param: float(v)} for v in np.linspace(self.start, self.stop, int(self.steps))]

    def as_dict(self) -> dict:
        return {"linear": {"param": self.param, "start": self.start, "stop": self.stop, "steps": self.steps}}


@dataclass(frozen=True)
class TernaryGrid:
    params: Tuple[str, str, str]
    total: float
    resolution: int

    kind = "ternary"

    def __post_init__(self) -> None:
        if len(self.params) != 3 or len(set(self.params)) != 3:
            raise SweepConfigError(f"ternary grid needs three distinct parameter names (got {self.params}).")
        ternary_grid(self.resolution, self.total)

    @property
    def param_names(self) -> Tuple[str, ...]:
        return tuple(self.params)

    def points(self) -> List[Point]:
        a, b, c = self.params
        return [{a: x, b: y, c: z} for x, y, z in ternary_grid(self.resolution, self.total)]

    def as_dict(self) -> dict:
        return {"ternary": {"params": list(self.params), "total": self.total, "resolution": self.resolution}}


@dataclass(frozen=True)
class PathGrid:
    """Explicit list of parameter points; every point names the same parameters."""

    path: Tuple[Tuple[Tuple[str, float], ...], ...]

    kind = "path"

    def __post_init__(self) -> None:
        if not self.path:
            raise SweepConfigError("path grid needs at least one point.")
        names = [tuple(k for k, _ in p) for p in self.path]
        if any(n != names[0] for n in names):
            raise SweepConfigError("every path point must name the same parameters in the same order.")

    @classmethod
    def from_points(cls, points: Union[Sequence[Mapping[str, Any]], Mapping[str, Sequence[Any]]]) -> "PathGrid":
        """Accepts a list of points or a column mapping {name: [values...]} of equal lengths."""
        if isinstance(points, Mapping):
            columns = {str(k): list(v) for k, v in points.items()}
            lengths = {len(v) for v in columns.values()}
            if len(lengths) != 1:
                raise SweepConfigError("path columns must all have the same length.")
            n = lengths.pop()
            points = [{k: v[i] for k, v in columns.items()} for i in range(n)]
        try:
            return cls(tuple(tuple((str(k), float(v)) for k, v in p.items()) for p in points))
        except (AttributeError, TypeError, ValueError) as e:
            raise SweepConfigError("path points must be mappings of name -> number.", hint=str(e)) from None

    @property
    def param_names(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self.path[0])

    def points(self) -> List[Point]:
        return [dict(p) for p in self.path]

    def as_dict(self) -> dict:
        return {"path": [dict(p) for p in self.path]}


@dataclass(frozen=True)
class RectGrid:
    """Cartesian product of two linear axes; x varies fastest."""

    x: str
    x_start: float
    x_stop: float
    x_steps: int
    y: str
    y_start: float
    y_stop: float
    y_steps: int

    kind = "rect"

    def __post_init__(self) -> None:
        if int(self.x_steps) < 2 or int(self.y_steps) < 2:
            raise SweepConfigError("rect grid needs x_steps >= 2 and y_steps >= 2.")
        if self.x == self.y:
            raise SweepConfigError("rect grid axes must be different parameters.")

    @property
    def param_names(self) -> Tuple[str, ...]:
        return (self.x, self.y)

    def points(self) -> List[Point]:
        xs = np.linspace(self.x_start, self.x_stop, int(self.x_steps))
        ys = np.linspace(self.y_start, self.y_stop, int(self.y_steps))
        return [{self.x: float(xv), self.y: float(yv)} for yv in ys for xv in xs]

    def as_dict(self) -> dict:
        return {
            "rect": {
                "x": self.x, "x_start": self.x_start, "x_stop": self.x_stop, "x_steps": self.x_steps,
                "y": self.y, "y_start": self.y_start, "y_stop": self.y_stop, "y_steps": self.y_steps,
            }
        }


Grid = Union[LinearGrid, TernaryGrid, PathGrid, RectGrid]


def parse_grid(data: Any) -> Grid:
    if not isinstance(data, dict) or len(data) != 1:
        raise SweepConfigError(
            "grid must be a mapping with exactly one of: linear, ternary, path, rect.",
            details={"grid": data},
        )
    (kind, body), = data.items()
    try:
        if kind == "linear":
            return LinearGrid(str(body["param"]), float(body["start"]), float(body["stop"]), int(body["steps"]))
        if kind == "ternary":
            return TernaryGrid(tuple(str(p) for p in body["params"]), float(body["total"]), int(body["resolution"]))
        if kind == "path":
            return PathGrid.from_points(body)
        if kind == "rect":
            return RectGrid(
                str(body["x"]), float(body["x_start"]), float(body["x_stop"]), int(body["x_steps"]),
                str(body["y"]), float(body["y_start"]), float(body["y_stop"]), int(body["y_steps"]),
            )
    except (KeyError, TypeError, ValueError) as e:
        raise SweepConfigError(f"Invalid {kind} grid.", hint=f"missing or bad field: {e}") from None
    raise SweepConfigError(f"Unknown grid kind '{kind}'.", hint="Use linear, ternary, path or rect.")


# ---------------------------------------------------------------------------
# Cluster-Ising simplex presets
# ---------------------------------------------------------------------------

# Phases of the cluster-Ising simplex: g0 dominant -> trivial paramagnet,
# g1 dominant -> XX ferromagnet (symmetry breaking), g2 dominant -> cluster SPT.
CLUSTER_EDGE_MIDPOINTS: Dict[str, Tuple[float, float, float]] = {
    "SSB-trivial": (0.5, 0.5, 0.0),
    "SPT-trivial": (0.5, 0.0, 0.5),
    "SSB-SPT": (0.0, 0.5, 0.5),
}


def cluster_edge_midpoints(total: float = 4.0) -> Dict[str, Point]:
    return {
        name: {"g0": a * total, "g1": b * total, "g2": c * total}
        for name, (a, b, c) in CLUSTER_EDGE_MIDPOINTS.items()
    }
