# shadowpca/pipeline/config.py
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml

from shadowpca.core.errors import SolverConfigError, SweepConfigError
from shadowpca.groundstate import SolverOptions
from .grids import Grid, parse_grid

MODES = ("sampled", "oracle-exact", "oracle-paper", "both")

# "both" expands to one row per listed mode
ROW_MODES: Dict[str, Tuple[str, ...]] = {
    "sampled": ("sampled",),
    "oracle-exact": ("oracle-exact",),
    "oracle-paper": ("oracle-paper",),
    "both": ("sampled", "oracle-exact"),
}

DEFAULT_SHOTS = 2000
DEFAULT_K = 4

_KNOWN_KEYS = {
    "model", "params", "lattice", "grid", "shots", "seed", "mode", "k", "workers",
    "solver", "entropy_cut", "save_covariance", "record_timing",
}


@dataclass(frozen=True)
class ClassificationThresholds:
    """ratio >= symmetry_breaking -> symmetry-breaking; ratio <= topological -> topological."""

    symmetry_breaking: float = 1.5
    topological: float = 1.15

    def __post_init__(self) -> None:
        if not self.topological < self.symmetry_breaking:
            raise SweepConfigError(
                f"topological threshold {self.topological} must be below symmetry_breaking {self.symmetry_breaking}."
            )


@dataclass(frozen=True)
class SweepSpec:
    """
    model:   catalog name
    params:  fixed couplings (grid values override them per point)
    lattice: size keys and boundary, e.g. {L: 12, boundary: open}
    """

    model: str
    grid: Grid
    params: Dict[str, Any] = field(default_factory=dict)
    lattice: Dict[str, Any] = field(default_factory=dict)
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    mode: str = "sampled"
    k: int = DEFAULT_K
    workers: int = 1
    solver: SolverOptions = field(default_factory=SolverOptions)
    entropy_cut: Optional[Union[int, str]] = None
    save_covariance: bool = False
    record_timing: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise SweepConfigError(f"Unknown mode '{self.mode}'.", hint=f"Use one of {list(MODES)}.")
        if int(self.shots) < 1 and self.uses_sampling:
            raise SweepConfigError(f"shots must be >= 1 (got {self.shots}).")
        if int(self.k) < 1:
            raise SweepConfigError(f"k must be >= 1 (got {self.k}).")
        if int(self.workers) < 1:
            raise SweepConfigError(f"workers must be >= 1 (got {self.workers}).")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise SweepConfigError(f"seed must be a 64-bit unsigned integer (got {self.seed}).")
        if self.entropy_cut is not None and self.entropy_cut != "half":
            if isinstance(self.entropy_cut, bool) or not isinstance(self.entropy_cut, int) or self.entropy_cut < 1:
                raise SweepConfigError(f"entropy_cut must be a positive int or 'half' (got {self.entropy_cut!r}).")
        overlap = set(self.grid.param_names) & set(self.lattice)
        if overlap:
            raise SweepConfigError(f"grid parameters {sorted(overlap)} collide with lattice keys.")

    @property
    def row_modes(self) -> Tuple[str, ...]:
        return ROW_MODES[self.mode]

    @property
    def uses_sampling(self) -> bool:
        return "sampled" in ROW_MODES.get(self.mode, ())

    @property
    def param_names(self) -> Tuple[str, ...]:
        return self.grid.param_names

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "params": dict(self.params),
            "lattice": dict(self.lattice),
            "grid": self.grid.as_dict(),
            "shots": self.shots,
            "seed": self.seed,
            "mode": self.mode,
            "k": self.k,
            "workers": self.workers,
            "solver": self.solver.as_dict(),
            "entropy_cut": self.entropy_cut,
            "save_covariance": self.save_covariance,
            "record_timing": self.record_timing,
        }

    @classmethod
    def from_dict(cls, data: Any) -> "SweepSpec":
        if not isinstance(data, dict):
            raise SweepConfigError("Sweep spec must be a mapping.")
        unknown = set(data) - _KNOWN_KEYS
        if unknown:
            raise SweepConfigError(
                f"Unknown sweep keys {sorted(unknown)}.",
                hint=f"Valid keys: {sorted(_KNOWN_KEYS)}",
            )
        for key in ("model", "grid"):
            if key not in data:
                raise SweepConfigError(f"Sweep spec is missing '{key}'.")

        for key in ("params", "lattice", "solver"):
            if data.get(key) is not None and not isinstance(data[key], dict):
                raise SweepConfigError(f"'{key}' must be a mapping.")

        solver_data = dict(data.get("solver") or {})
        try:
            solver = SolverOptions(**solver_data)
        except TypeError as e:
            raise SweepConfigError("Invalid solver options.", hint=str(e)) from None
        except SolverConfigError as e:
            raise SweepConfigError(f"Invalid solver options: {e.message}", hint=e.hint) from None

        try:
            return cls(
                model=str(data["model"]),
                grid=parse_grid(data["grid"]),
                params=dict(data.get("params") or {}),
                lattice=dict(data.get("lattice") or {}),
                shots=int(data.get("shots", DEFAULT_SHOTS)),
                seed=int(data.get("seed", 0)),
                mode=str(data.get("mode", "sampled")),
                k=int(data.get("k", DEFAULT_K)),
                workers=int(data.get("workers", 1)),
                solver=solver,
                entropy_cut=data.get("entropy_cut"),
                save_covariance=bool(data.get("save_covariance", False)),
                record_timing=bool(data.get("record_timing", False)),
            )
        except (TypeError, ValueError) as e:
            raise SweepConfigError("Invalid sweep spec value.", hint=str(e)) from None


def load_sweep_spec(path: str | Path) -> SweepSpec:
    """Read a YAML or JSON sweep file (JSON parses as YAML)."""
    p = Path(path)
    if not p.exists():
        raise SweepConfigError(f"Sweep spec not found: {p}")
    try:
        with open(p, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise SweepConfigError(f"Cannot parse sweep spec {p}.", hint=str(e)) from None
    return SweepSpec.from_dict(data)
