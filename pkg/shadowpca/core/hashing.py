# shadowpca/core/hashing.py
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

_SEED_MASK = (1 << 64) - 1


def sha256_file(path: Path) -> str:
    """
    Compute SHA256 hash of a file (streamed, memory-safe).
    Returns lowercase hex digest.
    """
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1024 * 1024), b""):
            h.update(chunk)
    return h.hexdigest()


def sha256_json(obj: Any) -> str:
    """Hash of the canonical JSON form of `obj` (sorted keys, no whitespace)."""
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def derive_seed(master_seed: int, *labels: Any) -> int:
    """
    Stable 64-bit child seed from a master seed and a label path.

    derive_seed(s, 3) depends only on (s, 3): adding grid points never
    changes the seed of an existing point.
    """
    h = hashlib.sha256()
    h.update(str(int(master_seed) & _SEED_MASK).encode("ascii"))
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "little") & _SEED_MASK
