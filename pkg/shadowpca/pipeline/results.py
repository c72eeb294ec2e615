# shadowpca/pipeline/results.py
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np

from shadowpca.core.errors import ShadowPcaError
from .sinks import parse_cell


@dataclass(frozen=True)
class ResultsTable:
    """results.csv loaded back: typed rows plus the header layout."""

    header: Tuple[str, ...]
    rows: Tuple[Dict[str, Any], ...]

    @classmethod
    def load(cls, path: str | Path) -> "ResultsTable":
        p = Path(path)
        if not p.exists():
            raise ShadowPcaError(f"Results file not found: {p}")
        with open(p, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            header = tuple(reader.fieldnames or ())
            raw = list(reader)
        if not header or header[0] != "grid_index" or "mode" not in header:
            raise ShadowPcaError(f"{p} is not a sweep results file.", details={"header": list(header)})
        rows = []
        for r in raw:
            row = {k: (v if k in ("mode", "error") else parse_cell(v)) for k, v in r.items()}
            row["error"] = r.get("error") or None
            rows.append(row)
        return cls(header=header, rows=tuple(rows))

    @property
    def param_names(self) -> Tuple[str, ...]:
        return self.header[1:self.header.index("mode")]

    @property
    def k(self) -> int:
        return sum(1 for h in self.header if h.startswith("lambda"))

    def modes(self) -> List[str]:
        seen: List[str] = []
        for r in self.rows:
            if r["mode"] not in seen:
                seen.append(r["mode"])
        return seen

    def rows_for(self, mode: str) -> List[Dict[str, Any]]:
        return [r for r in self.rows if r["mode"] == mode]

    def column(self, name: str, mode: str) -> np.ndarray:
        if name not in self.header or name in ("mode", "error"):
            raise ShadowPcaError(f"No numeric column '{name}' in results.", hint=f"Columns: {list(self.header)}")
        return np.asarray(
            [np.nan if r[name] is None else float(r[name]) for r in self.rows_for(mode)],
            dtype=float,
        )
