# shadowpca/shadow/codec.py
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

import numpy as np

from shadowpca.core.errors import ShadowPcaError
from shadowpca.model.pauli import AXES, AXIS_INDEX
from .dataset import ShotDataset

# NDJSON layout:
#   line 1:  {"L": 4, "N": 2000, "seed": 17, "source": {...}}
#   line k:  {"axes": "xzyz", "signs": "+-++"}

_SIGN_CHAR = {1: "+", -1: "-"}
_CHAR_SIGN = {"+": 1, "-": -1}


def dataset_header(dataset: ShotDataset) -> Dict[str, Any]:
    return {"L": dataset.L, "N": dataset.n_shots, "seed": dataset.seed, "source": dataset.source}


def write_ndjson(dataset: ShotDataset, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(dataset_header(dataset), sort_keys=True) + "\n")
        for axes_row, sign_row in zip(dataset.axes, dataset.signs):
            line = {
                "axes": "".join(AXES[a] for a in axes_row),
                "signs": "".join(_SIGN_CHAR[int(s)] for s in sign_row),
            }
            f.write(json.dumps(line) + "\n")
    return p


def read_ndjson(path: str | Path) -> ShotDataset:
    p = Path(path)
    with open(p, "r", encoding="utf-8") as f:
        lines = [ln for ln in f.read().splitlines() if ln.strip()]
    if not lines:
        raise ShadowPcaError(f"Shot file {p} is empty.")

    try:
        header = json.loads(lines[0])
        L, N = int(header["L"]), int(header["N"])
        seed = int(header["seed"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ShadowPcaError(f"Bad header in shot file {p}.", hint=str(e)) from None

    body = lines[1:]
    if len(body) != N:
        raise ShadowPcaError(
            f"Shot file {p} declares N={N} but holds {len(body)} shots.",
            details={"declared": N, "found": len(body)},
        )

    axes = np.empty((N, L), dtype=np.uint8)
    signs = np.empty((N, L), dtype=np.int8)
    for k, ln in enumerate(body):
        try:
            rec = json.loads(ln)
            a, s = rec["axes"], rec["signs"]
            if len(a) != L or len(s) != L:
                raise ValueError(f"expected {L} sites")
            axes[k] = [AXIS_INDEX[c] for c in a]
            signs[k] = [_CHAR_SIGN[c] for c in s]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise ShadowPcaError(
                f"Bad shot record on line {k + 2} of {p}.",
                hint=str(e),
                details={"line": k + 2},
            ) from None

    return ShotDataset(axes, signs, seed, dict(header.get("source") or {}))
