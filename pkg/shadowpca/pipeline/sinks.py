# shadowpca/pipeline/sinks.py
from __future__ import annotations

import csv
import logging
import threading
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

log = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """Deterministic CSV text: shortest round-trip floats, lower-case booleans, '' for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class OrderedRowWriter:
    """
    Single CSV writer fed by concurrent workers.

    Workers submit the rows of one grid index at a time, in any order; rows
    reach the file in grid-index order as soon as the contiguous prefix is
    complete, so the file is identical for every worker count.
    """

    def __init__(self, path: Path, header: Sequence[str]):
        self._path = Path(path)
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._f = open(self._path, "w", encoding="utf-8", newline="")
        self._w = csv.writer(self._f, lineterminator="\n")
        self._w.writerow(list(header))
        self._f.flush()

        self._lock = threading.Lock()
        self._pending: Dict[int, List[List[str]]] = {}
        self._next = 0
        self._closed = False

    @property
    def path(self) -> Path:
        return self._path

    def submit(self, index: int, rows: List[List[Any]]) -> None:
        cells = [[format_cell(v) for v in row] for row in rows]
        with self._lock:
            if self._closed:
                return
            self._pending[int(index)] = cells
            wrote = False
            while self._next in self._pending:
                self._w.writerows(self._pending.pop(self._next))
                self._next += 1
                wrote = True
            if wrote:
                self._f.flush()

    def close(self) -> None:
        with self._lock:
            if self._closed:
                return
            self._closed = True
            if self._pending:
                # a gap means an index was never submitted; keep what we have, in order
                log.warning("ORDERED_WRITER_GAP next=%d pending=%s", self._next, sorted(self._pending))
                for idx in sorted(self._pending):
                    self._w.writerows(self._pending[idx])
                self._pending.clear()
            self._f.close()

    def __enter__(self) -> "OrderedRowWriter":
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()


def write_rows_csv(path: Path, header: Sequence[str], rows: List[List[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(list(header))
        for row in rows:
            w.writerow([format_cell(v) for v in row])
    return path


def parse_cell(text: Optional[str]) -> Any:
    """Inverse of format_cell for numeric/boolean columns; other text is returned unchanged."""
    if text is None or text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return float(text)
    except ValueError:
        return text
