# shadowpca/cli/commands.py
from __future__ import annotations

import argparse
import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from shadowpca.core.errors import EmptyDatasetError, ShadowPcaError
from shadowpca.groundstate import SolverOptions, ground_state
from shadowpca.model import ModelCatalog
from shadowpca.oracle import (
    analytic_covariance,
    compare_modes,
    compare_sampled,
    exact_trace,
    oracle_result,
    write_expectations_csv,
)
from shadowpca.pipeline import (
    ClassificationThresholds,
    ResultsTable,
    lambda_series,
    load_sweep_spec,
    peak_report,
    render_covariance_heatmap,
    render_grid_heatmap,
    render_line,
    render_scatter,
    render_ternary_heatmap,
    run_sweep,
    sweep_paths,
)
from shadowpca.pipeline.analysis import DEFAULT_PROMINENCE, MIN_PEAK_ROWS
from shadowpca.pipeline.sinks import write_rows_csv
from shadowpca.shadow import read_ndjson, sample_batch, write_ndjson
from shadowpca.spectra import dataset_covariance, eigen_spectrum, project, read_covariance_csv, write_covariance_csv

from shadowpca.cli.args import model_overrides

log = logging.getLogger(__name__)


# ---------------- Logging ----------------

def configure_file_logging(app_log_path: Path) -> None:
    """
    Add a file handler to the root logger (idempotent).
    Kept in CLI (presentation-layer concern).
    """
    root = logging.getLogger()
    app_log_path.parent.mkdir(parents=True, exist_ok=True)
    target = str(app_log_path.resolve())

    for h in root.handlers:
        if isinstance(h, logging.FileHandler) and getattr(h, "baseFilename", None) == target:
            return

    fh = logging.FileHandler(app_log_path, encoding="utf-8", delay=True)
    fh.setLevel(logging.INFO)
    fh.setFormatter(logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s"))
    root.addHandler(fh)

    if root.level > logging.INFO:
        root.setLevel(logging.INFO)


# ---------------- Output helpers ----------------

def _fmt(value: Optional[float], spec: str = ".6g") -> str:
    return "-" if value is None else format(value, spec)


def _write_json(path: Optional[str], data: Dict[str, Any]) -> None:
    text = json.dumps(data, indent=2, default=lambda o: o.tolist() if hasattr(o, "tolist") else str(o))
    if path is None:
        print(text)
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text + "\n", encoding="utf-8")
    print(f"Wrote {p}")


def _spectrum_dict(sr, k: int) -> Dict[str, Any]:
    return {
        "lambdas": [float(x) for x in sr.lambdas[:k]],
        "ratio": sr.ratio,
        "trace": sr.trace,
        "dim": sr.dim,
    }


def _solver_options(args: argparse.Namespace) -> SolverOptions:
    return SolverOptions(
        tol=args.tol,
        seed=getattr(args, "seed", 0),
        pinning_policy=args.pinning,
        pinning_strength=args.pinning_strength,
        allow_large=args.allow_large,
    )


def print_spectrum(sr, k: int) -> None:
    for i, lam in enumerate(sr.lambdas[:k], start=1):
        print(f"  lambda{i} = {lam:.6f}")
    print(f"  ratio    = {_fmt(sr.ratio, '.4f')}")
    print(f"  trace    = {sr.trace:.6f}")


# ---------------- Commands ----------------

def cmd_models(*, catalog: ModelCatalog) -> int:
    print("Available models:\n")
    print("Usage:")
    print("  shadowpca <sample|oracle|compare|lattice> --model <name> [--params k=v,...]\n")

    for name in catalog.names():
        entry = catalog.get(name)
        print(f"{name} ({entry.label}, lattice={entry.lattice})")
        opts = [f"{key}={spec.get('default')!r}" for key, spec in entry.schema.items()]
        print("  options: " + ", ".join(opts))
        print(f"  pinning: {entry.pinning or '(none)'}")
        print()
    return 0


def cmd_lattice(args: argparse.Namespace, *, catalog: ModelCatalog) -> int:
    model = catalog.build(args.model, model_overrides(args))
    if model.lattice is None:
        raise ShadowPcaError(f"Model '{args.model}' carries no lattice.")
    text = model.lattice.to_json()
    if args.out is None:
        print(text)
    else:
        p = Path(args.out)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text + "\n", encoding="utf-8")
        print(f"Wrote {p}")
    return 0


def cmd_sample(args: argparse.Namespace, *, catalog: ModelCatalog) -> int:
    model = catalog.build(args.model, model_overrides(args))
    report = ground_state(model, _solver_options(args))
    ds = sample_batch(report.state, args.shots, args.seed, source={"model": model.label})
    path = write_ndjson(ds, args.out)
    print(f"Model:   {model.label} (n={model.n_sites})")
    print(f"Energy:  {report.energy:.12f} degenerate={report.degenerate} pinned={report.pinning_applied}")
    print(f"Wrote {ds.n_shots} shots to {path}")
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    ds = read_ndjson(args.shots)
    c = dataset_covariance(ds)
    sr = eigen_spectrum(c, args.k)
    print(f"Shots: {ds.n_shots} L={ds.L}")
    print_spectrum(sr, args.k)

    if args.covariance:
        print(f"Wrote {write_covariance_csv(c, args.covariance)}")
    if args.projections:
        k = min(args.k, sr.top_vectors.shape[0])
        coords = project(ds, sr.top_vectors, k)
        path = write_rows_csv(
            Path(args.projections),
            [f"pc{i}" for i in range(1, k + 1)],
            [[float(v) for v in row] for row in coords],
        )
        print(f"Wrote {path}")
    if args.out:
        _write_json(args.out, {"source": args.shots, "n_shots": ds.n_shots, "L": ds.L, **_spectrum_dict(sr, args.k)})
    return 0


def cmd_oracle(args: argparse.Namespace, *, catalog: ModelCatalog) -> int:
    model = catalog.build(args.model, model_overrides(args))
    res = oracle_result(model, args.mode, solver=_solver_options(args), k=args.k)
    print(f"Model:   {model.label} (n={model.n_sites}) mode={args.mode}")
    print(f"Energy:  {res.report.energy:.12f} degenerate={res.report.degenerate} pinned={res.report.pinning_applied}")
    print_spectrum(res.spectrum, args.k)
    print(f"  exact trace identity = {exact_trace(res.tables):.6f}")

    if args.covariance:
        print(f"Wrote {write_covariance_csv(res.covariance, args.covariance)}")
    if args.expectations:
        print(f"Wrote {write_expectations_csv(res.tables, args.expectations)}")
    if args.out:
        _write_json(
            args.out,
            {
                "model": model.as_dict(),
                "mode": args.mode,
                "ground_state": res.report.summary(),
                **_spectrum_dict(res.spectrum, args.k),
            },
        )
    return 0


def cmd_compare(args: argparse.Namespace, *, catalog: ModelCatalog) -> int:
    model = catalog.build(args.model, model_overrides(args))
    report = ground_state(model, _solver_options(args))
    res = oracle_result(model, "exact", k=args.k, report=report)
    ds = sample_batch(report.state, args.shots_n, args.seed, source={"model": model.label})
    c_sampled = dataset_covariance(ds)

    cmp = compare_sampled(c_sampled, res.covariance, k=args.k)
    modes = compare_modes(res.tables, k=args.k)
    c_paper = analytic_covariance(res.tables, "paper")
    paper_dev = float(np.max(np.abs(c_sampled - c_paper)))

    print(f"Model:   {model.label} (n={model.n_sites}) N={args.shots_n} seed={args.seed}")
    print("Sampled vs oracle-exact:")
    print(f"  max |dC|     = {cmp.max_abs_covariance_diff:.4e}")
    print("  d lambda     = " + ", ".join(f"{d:+.4e}" for d in cmp.lambda_diff))
    print(f"  d ratio      = {_fmt(cmp.ratio_diff, '+.4e')}")
    print("Sampled vs oracle-paper:")
    print(f"  max |dC|     = {paper_dev:.4e}")
    print("Oracle exact vs paper:")
    print(f"  same-site    = {modes.max_same_site_deviation:.4e}")
    print(f"  cross-site   = {modes.max_cross_site_deviation:.4e}")
    print(f"  ratio        = {_fmt(modes.ratio_exact, '.4f')} vs {_fmt(modes.ratio_paper, '.4f')}")

    if args.out:
        _write_json(
            args.out,
            {
                "model": model.label,
                "n_shots": args.shots_n,
                "seed": args.seed,
                "sampled_vs_exact": cmp.as_dict(),
                "sampled_vs_paper_max_abs_diff": paper_dev,
                "exact_vs_paper": modes.as_dict(),
            },
        )
    return 0


def cmd_sweep(args: argparse.Namespace, *, catalog: ModelCatalog) -> int:
    spec = load_sweep_spec(args.spec)
    if args.workers is not None:
        spec = replace(spec, workers=args.workers)

    defaults = ClassificationThresholds()
    thresholds = ClassificationThresholds(
        symmetry_breaking=defaults.symmetry_breaking if args.sb_threshold is None else args.sb_threshold,
        topological=defaults.topological if args.topo_threshold is None else args.topo_threshold,
    )

    paths = sweep_paths(args.out)
    configure_file_logging(paths.log_file)
    result = run_sweep(spec, paths.root, catalog=catalog, spec_source=str(args.spec))

    print(f"Sweep:   {spec.model} grid={spec.grid.kind} points={len(result.outcomes)} modes={','.join(spec.row_modes)}")
    print(f"Results: {paths.results_csv}")
    print(f"Failed:  {result.n_failed}")

    if spec.grid.kind in ("linear", "path") and len(result.outcomes) >= MIN_PEAK_ROWS:
        param = spec.param_names[0]
        threshold = DEFAULT_PROMINENCE if args.threshold is None else args.threshold
        for mode in spec.row_modes:
            rep = peak_report(result, mode, param, threshold=threshold, thresholds=thresholds)
            if rep.peak.found:
                print(
                    f"Peak[{mode}]: {param}={rep.peak.parameter:.6g} lambda1={rep.peak.value:.6g} "
                    f"prominence={rep.peak.prominence:.4g} ratio={_fmt(rep.ratio_at_peak, '.4f')} "
                    f"-> {rep.classification or '-'}"
                )
            else:
                print(f"Peak[{mode}]: none (prominence={rep.peak.prominence:.4g} < {threshold})")

    return 1 if result.n_failed else 0


def _read_matrix_csv(path: Path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.size == 0:
        raise EmptyDatasetError(f"{path} holds no rows.")
    return data


def cmd_render(args: argparse.Namespace) -> int:
    src = Path(args.input)
    if not src.exists():
        raise ShadowPcaError(f"Input not found: {src}")

    if args.kind == "covariance-heatmap":
        svg = render_covariance_heatmap(read_covariance_csv(src), block=args.block or None, title=args.title)
    elif args.kind == "scatter":
        svg = render_scatter(_read_matrix_csv(src), title=args.title)
    else:
        table = ResultsTable.load(src)
        modes = table.modes()
        if not modes:
            raise EmptyDatasetError(f"{src} holds no result rows.")
        mode = args.mode or modes[0]
        if mode not in modes:
            raise ShadowPcaError(f"No rows with mode '{mode}'.", hint=f"Modes in file: {modes}")
        names = table.param_names
        title = args.title or f"{mode}"

        if args.kind == "line":
            x_name = args.x or names[0]
            series = [(args.column, table.column(args.column, mode))] if args.column else lambda_series(table, mode)
            svg = render_line(table.column(x_name, mode), series, x_label=x_name, title=title)
        elif args.kind == "ternary-heatmap":
            if len(names) != 3:
                raise ShadowPcaError(f"ternary-heatmap needs three grid parameters (got {list(names)}).")
            column = args.column or "lambda1"
            pts = np.column_stack([table.column(n, mode) for n in names])
            svg = render_ternary_heatmap(
                [tuple(p) for p in pts], table.column(column, mode),
                labels=(names[0], names[1], names[2]), column=column, title=title,
            )
        else:
            if len(names) != 2:
                raise ShadowPcaError(f"grid-heatmap needs two grid parameters (got {list(names)}).")
            column = args.column or "lambda1"
            svg = render_grid_heatmap(
                table.column(names[0], mode), table.column(names[1], mode), table.column(column, mode),
                x_label=names[0], y_label=names[1], column=column, title=title,
            )

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg, encoding="utf-8")
    print(f"Wrote {out}")
    return 0
