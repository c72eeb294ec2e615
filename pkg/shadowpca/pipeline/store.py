# shadowpca/pipeline/store.py
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict

_log = logging.getLogger(__name__)

RESULTS_CSV = "results.csv"
MANIFEST_JSON = "manifest.json"
ENTROPY_CSV = "entropy.csv"
COVARIANCE_DIR = "covariance"
SWEEP_LOG = "sweep.log"


@dataclass(frozen=True)
class SweepPaths:
    root: Path
    results_csv: Path
    manifest_json: Path
    entropy_csv: Path
    covariance_dir: Path
    log_file: Path

    def covariance_csv(self, index: int, mode: str) -> Path:
        return self.covariance_dir / f"point_{index}_{mode}.csv"


def sweep_paths(out_dir: str | Path) -> SweepPaths:
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    return SweepPaths(
        root=root,
        results_csv=root / RESULTS_CSV,
        manifest_json=root / MANIFEST_JSON,
        entropy_csv=root / ENTROPY_CSV,
        covariance_dir=root / COVARIANCE_DIR,
        log_file=root / SWEEP_LOG,
    )


# ---------------- json helpers ----------------

def load_manifest(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f) or {}
    except FileNotFoundError:
        return {}
    except json.JSONDecodeError as e:
        _log.warning("MANIFEST_JSON_CORRUPT path=%s error=%s", path, e)
        return {}


def write_manifest(path: Path, data: Dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    data = dict(data)
    data.setdefault("created_at_utc", datetime.now(timezone.utc).isoformat())
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2, default=_json_default)


def _json_default(obj: Any) -> Any:
    # numpy scalars and arrays
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return str(obj)
