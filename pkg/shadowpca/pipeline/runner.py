# shadowpca/pipeline/runner.py
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

import shadowpca
from shadowpca.core.errors import DimensionMismatchError, ShadowPcaError, SweepConfigError
from shadowpca.core.hashing import derive_seed, sha256_json
from shadowpca.groundstate import entanglement_entropy, ground_state
from shadowpca.model import ModelCatalog, load_catalog
from shadowpca.oracle import analytic_covariance, expectations
from shadowpca.shadow import sample_batch
from shadowpca.spectra import dataset_covariance, eigen_spectrum, write_covariance_csv
from .config import SweepSpec
from .sinks import OrderedRowWriter, write_rows_csv
from .store import SweepPaths, sweep_paths, write_manifest

log = logging.getLogger(__name__)

RNG_DESCRIPTION = (
    "point seed = first 8 bytes (little-endian) of sha256('<master>/<grid_index>'); "
    "Lanczos start vector from numpy default_rng(point seed); "
    "shot k from Generator(Philox(SeedSequence(point seed, spawn_key=(k,))))"
)


def results_header(param_names: Sequence[str], k: int) -> List[str]:
    return (
        ["grid_index", *param_names, "mode"]
        + [f"lambda{i}" for i in range(1, k + 1)]
        + ["ratio", "trace", "degenerate", "pinned", "wall_ms", "error"]
    )


@dataclass(frozen=True)
class SweepRow:
    grid_index: int
    point: Dict[str, float]
    mode: str
    lambdas: Tuple[float, ...] = ()
    ratio: Optional[float] = None
    trace: Optional[float] = None
    degenerate: Optional[bool] = None
    pinned: Optional[bool] = None
    wall_ms: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def cells(self, param_names: Sequence[str], k: int, *, with_timing: bool) -> List[Any]:
        lambdas = [float(x) for x in self.lambdas[:k]]
        lambdas += [None] * (k - len(lambdas))
        return [
            self.grid_index,
            *[self.point[p] for p in param_names],
            self.mode,
            *lambdas,
            self.ratio,
            self.trace,
            self.degenerate,
            self.pinned,
            round(self.wall_ms, 3) if (with_timing and self.wall_ms is not None) else None,
            self.error,
        ]


@dataclass
class PointOutcome:
    index: int
    seed: int
    point: Dict[str, float]
    rows: List[SweepRow]
    wall_ms: float
    entropy: Optional[float] = None
    covariances: Dict[str, np.ndarray] = field(default_factory=dict)
    ground: Dict[str, Any] = field(default_factory=dict)
    flags: Tuple[str, ...] = ()
    error: Optional[str] = None

    def manifest_entry(self) -> Dict[str, Any]:
        return {
            "grid_index": self.index,
            "seed": self.seed,
            "point": self.point,
            "wall_ms": round(self.wall_ms, 3),
            "ground_state": self.ground,
            "flags": list(self.flags),
            "error": self.error,
        }


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: Tuple[SweepRow, ...]
    outcomes: Tuple[PointOutcome, ...]
    paths: Optional[SweepPaths] = None

    @property
    def n_failed(self) -> int:
        return sum(1 for o in self.outcomes if o.error is not None)

    def rows_for(self, mode: str) -> List[SweepRow]:
        return [r for r in self.rows if r.mode == mode]

    def column(self, name: str, mode: str) -> np.ndarray:
        """Per-row values for mode; 'lambda<i>', 'ratio', 'trace' or a parameter name. Missing -> nan."""
        out = []
        for r in self.rows_for(mode):
            if name.startswith("lambda") and name[6:].isdigit():
                i = int(name[6:]) - 1
                out.append(r.lambdas[i] if i < len(r.lambdas) else np.nan)
            elif name in ("ratio", "trace"):
                v = getattr(r, name)
                out.append(np.nan if v is None else v)
            else:
                out.append(r.point[name])
        return np.asarray(out, dtype=float)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_spec(spec: SweepSpec, catalog: ModelCatalog) -> None:
    try:
        entry = catalog.get(spec.model)
    except ShadowPcaError as e:
        raise SweepConfigError(e.message, hint=e.hint, details=e.details) from None

    couplings = set(entry.coupling_names)
    bad = [p for p in (*spec.grid.param_names, *spec.params) if p not in couplings]
    if bad:
        raise SweepConfigError(
            f"Parameters {sorted(set(bad))} are not couplings of '{spec.model}'.",
            hint=f"Couplings: {sorted(couplings)}",
        )
    lattice_keys = set(entry.schema) - couplings
    bad = [p for p in spec.lattice if p not in lattice_keys]
    if bad:
        raise SweepConfigError(
            f"Lattice keys {sorted(bad)} are not valid for '{spec.model}'.",
            hint=f"Valid lattice keys: {sorted(lattice_keys)}",
        )


# ---------------------------------------------------------------------------
# One grid point
# ---------------------------------------------------------------------------

def _error_text(e: BaseException) -> str:
    if isinstance(e, ShadowPcaError):
        return f"{e.code}: {e.message}"
    return f"unexpected: {type(e).__name__}: {e}"


def evaluate_point(spec: SweepSpec, catalog: ModelCatalog, index: int, point: Dict[str, float]) -> PointOutcome:
    """Build, solve, sample/oracle and reduce one grid point. Never raises."""
    seed = derive_seed(spec.seed, index)
    t0 = time.perf_counter()
    rows: List[SweepRow] = []
    outcome = PointOutcome(index=index, seed=seed, point=dict(point), rows=rows, wall_ms=0.0)

    try:
        values = {**spec.lattice, **spec.params, **point}
        model = catalog.build(spec.model, values)
        outcome.flags = model.flags
        report = ground_state(model, replace(spec.solver, seed=seed))
        outcome.ground = report.summary()

        tables = None
        for mode in spec.row_modes:
            if mode == "sampled":
                ds = sample_batch(report.state, spec.shots, seed, source={"model": model.label, "grid_index": index})
                c = dataset_covariance(ds)
            else:
                if tables is None:
                    tables = expectations(report.state, allow_large=True)
                c = analytic_covariance(tables, "exact" if mode == "oracle-exact" else "paper")
            sr = eigen_spectrum(c, spec.k, allow_negative=(mode == "oracle-paper"))
            if spec.save_covariance:
                outcome.covariances[mode] = c
            rows.append(
                SweepRow(
                    grid_index=index,
                    point=dict(point),
                    mode=mode,
                    lambdas=tuple(float(x) for x in sr.lambdas[: spec.k]),
                    ratio=sr.ratio,
                    trace=sr.trace,
                    degenerate=report.degenerate,
                    pinned=report.pinning_applied,
                )
            )

        if spec.entropy_cut is not None:
            cut = model.n_sites // 2 if spec.entropy_cut == "half" else int(spec.entropy_cut)
            try:
                outcome.entropy = entanglement_entropy(report.state, cut)
            except DimensionMismatchError as e:
                log.warning("SWEEP_ENTROPY_SKIPPED index=%d cut=%d error=%s", index, cut, e)

    except Exception as e:
        if not isinstance(e, ShadowPcaError):
            log.exception("SWEEP_POINT_CRASHED index=%d", index)
        outcome.error = _error_text(e)
        done = {r.mode for r in rows}
        rows.extend(
            SweepRow(grid_index=index, point=dict(point), mode=m, error=outcome.error)
            for m in spec.row_modes
            if m not in done
        )
        log.warning("SWEEP_POINT_FAILED index=%d error=%s", index, outcome.error)

    outcome.wall_ms = (time.perf_counter() - t0) * 1000.0
    outcome.rows = [replace(r, wall_ms=outcome.wall_ms) for r in rows]
    return outcome


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def run_sweep(
    spec: SweepSpec,
    out_dir: str | Path | None = None,
    *,
    catalog: Optional[ModelCatalog] = None,
    spec_source: Optional[str] = None,
) -> SweepResult:
    """
    Evaluate every grid point, concurrently up to spec.workers.

    With out_dir, results.csv is streamed in grid order and manifest.json
    (plus entropy.csv / covariance files when requested) is written at the end.
    """
    catalog = catalog or load_catalog()
    validate_spec(spec, catalog)

    points = spec.grid.points()
    names = spec.param_names
    paths = sweep_paths(out_dir) if out_dir is not None else None
    writer = OrderedRowWriter(paths.results_csv, results_header(names, spec.k)) if paths else None

    log.info(
        "SWEEP_START model=%s points=%d modes=%s workers=%d",
        spec.model, len(points), ",".join(spec.row_modes), spec.workers,
    )
    t0 = time.perf_counter()
    outcomes: Dict[int, PointOutcome] = {}

    def _collect(o: PointOutcome) -> None:
        outcomes[o.index] = o
        if writer is not None:
            writer.submit(o.index, [r.cells(names, spec.k, with_timing=spec.record_timing) for r in o.rows])
        log.debug("SWEEP_POINT_DONE index=%d wall_ms=%.1f", o.index, o.wall_ms)

    try:
        if spec.workers == 1:
            for i, p in enumerate(points):
                _collect(evaluate_point(spec, catalog, i, p))
        else:
            with ThreadPoolExecutor(max_workers=spec.workers) as pool:
                futures = [pool.submit(evaluate_point, spec, catalog, i, p) for i, p in enumerate(points)]
                for fut in as_completed(futures):
                    _collect(fut.result())
    finally:
        if writer is not None:
            writer.close()

    ordered = tuple(outcomes[i] for i in sorted(outcomes))
    rows = tuple(r for o in ordered for r in o.rows)
    result = SweepResult(spec=spec, rows=rows, outcomes=ordered, paths=paths)
    total_ms = (time.perf_counter() - t0) * 1000.0

    if paths is not None:
        _write_extras(result, paths, catalog, total_ms, spec_source)

    log.info("SWEEP_DONE rows=%d failed_points=%d wall_ms=%.1f", len(rows), result.n_failed, total_ms)
    return result


def _write_extras(
    result: SweepResult,
    paths: SweepPaths,
    catalog: ModelCatalog,
    total_ms: float,
    spec_source: Optional[str],
) -> None:
    spec = result.spec
    names = spec.param_names

    if spec.entropy_cut is not None:
        write_rows_csv(
            paths.entropy_csv,
            ["grid_index", *names, "entropy"],
            [[o.index, *[o.point[p] for p in names], o.entropy] for o in result.outcomes],
        )

    if spec.save_covariance:
        for o in result.outcomes:
            for mode, c in o.covariances.items():
                write_covariance_csv(c, paths.covariance_csv(o.index, mode))

    write_manifest(
        paths.manifest_json,
        {
            "artifact": "shadowpca",
            "version": shadowpca.__version__,
            "spec": spec.as_dict(),
            "spec_sha256": sha256_json(spec.as_dict()),
            "spec_source": spec_source,
            "catalog_sha256": dict(catalog.file_hashes),
            "rng": RNG_DESCRIPTION,
            "n_points": len(result.outcomes),
            "failed_points": result.n_failed,
            "total_wall_ms": round(total_ms, 3),
            "points": [o.manifest_entry() for o in result.outcomes],
        },
    )
