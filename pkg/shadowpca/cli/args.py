# shadowpca/cli/args.py
from __future__ import annotations

import argparse
from typing import Any, Dict, Optional

import yaml

from shadowpca.core.errors import CatalogError
from shadowpca.groundstate import PINNING_POLICIES
from shadowpca.model.catalog import DEFAULT_METADATA_DIR
from shadowpca.pipeline.config import DEFAULT_K, DEFAULT_SHOTS
from shadowpca.pipeline.render import RENDER_KINDS

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


# ---------------- parameter helpers (CLI-local) ----------------

def parse_params(text: Optional[str]) -> Dict[str, Any]:
    """
    "h=1.0,boundary=periodic" -> {"h": 1.0, "boundary": "periodic"}.

    Values go through yaml.safe_load so numbers come out typed; the catalog
    resolver still validates and casts strictly.
    """
    out: Dict[str, Any] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise CatalogError(f"Bad parameter '{item}'.", hint="Use k=v pairs separated by commas.")
        key, raw = (s.strip() for s in item.split("=", 1))
        if not key:
            raise CatalogError(f"Bad parameter '{item}': empty name.")
        try:
            out[key] = yaml.safe_load(raw) if raw else None
        except yaml.YAMLError:
            out[key] = raw
    return out


def model_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    values = parse_params(getattr(args, "params", None))
    if getattr(args, "L", None) is not None:
        values["L"] = int(args.L)
    return values


# ---------------- argparse ----------------

def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", required=True, help="Catalog model name (see: shadowpca models).")
    p.add_argument("--params", default=None, help="Comma separated k=v overrides, e.g. h=1.0,boundary=open")
    p.add_argument("--L", type=int, default=None, help="Shortcut for the L size key.")


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pinning", choices=list(PINNING_POLICIES), default="auto", help="Pinning policy.")
    p.add_argument("--pinning-strength", type=float, default=1e-6)
    p.add_argument("--tol", type=float, default=1e-10, help="Ground-state residual tolerance.")
    p.add_argument("--allow-large", action="store_true", help="Lift the state-vector size cap.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shadowpca")
    parser.add_argument("--log-level", default="WARNING", choices=LOG_LEVELS, help="Console log level.")
    parser.add_argument("--metadata", default=str(DEFAULT_METADATA_DIR), help="Directory holding models.yml.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_sweep = sub.add_parser("sweep", help="Run a parameter sweep from a YAML/JSON spec.")
    p_sweep.add_argument("--spec", required=True)
    p_sweep.add_argument("--out", required=True, help="Output directory.")
    p_sweep.add_argument("--workers", type=int, default=None, help="Override the spec's worker count.")
    p_sweep.add_argument("--threshold", type=float, default=None, help="Peak prominence threshold.")
    p_sweep.add_argument("--sb-threshold", type=float, default=None, help="Ratio at or above -> symmetry-breaking.")
    p_sweep.add_argument("--topo-threshold", type=float, default=None, help="Ratio at or below -> topological.")

    p_sample = sub.add_parser("sample", help="Sample classical-shadow snapshots of a ground state.")
    _add_model_args(p_sample)
    _add_solver_args(p_sample)
    p_sample.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--out", required=True, help="NDJSON output path.")

    p_spec = sub.add_parser("spectrum", help="Covariance spectrum of a shot file.")
    p_spec.add_argument("--shots", required=True, help="NDJSON shot file.")
    p_spec.add_argument("--k", type=int, default=DEFAULT_K)
    p_spec.add_argument("--out", default=None, help="JSON output path.")
    p_spec.add_argument("--covariance", default=None, help="Also write the covariance matrix as CSV.")
    p_spec.add_argument("--projections", default=None, help="Write per-shot principal coordinates as CSV.")

    p_oracle = sub.add_parser("oracle", help="Analytic covariance spectrum from the exact ground state.")
    _add_model_args(p_oracle)
    _add_solver_args(p_oracle)
    p_oracle.add_argument("--mode", choices=["exact", "paper"], default="exact")
    p_oracle.add_argument("--k", type=int, default=DEFAULT_K)
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--out", default=None, help="JSON output path.")
    p_oracle.add_argument("--covariance", default=None, help="Also write the covariance matrix as CSV.")
    p_oracle.add_argument("--expectations", default=None, help="Write the expectation tables as CSV.")

    p_cmp = sub.add_parser("compare", help="Sampled vs analytic covariance for one model.")
    _add_model_args(p_cmp)
    _add_solver_args(p_cmp)
    p_cmp.add_argument("--shots-N", dest="shots_n", type=int, default=DEFAULT_SHOTS)
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument("--k", type=int, default=DEFAULT_K)
    p_cmp.add_argument("--out", default=None, help="JSON output path.")

    p_render = sub.add_parser("render", help="Render results, a covariance or projections as SVG.")
    p_render.add_argument("--in", dest="input", required=True)
    p_render.add_argument("--kind", required=True, choices=list(RENDER_KINDS))
    p_render.add_argument("--column", default=None, help="Results column (default: lambda series / lambda1).")
    p_render.add_argument("--mode", default=None, help="Row mode to plot (default: first in file).")
    p_render.add_argument("--x", default=None, help="x parameter for line plots (default: first parameter).")
    p_render.add_argument("--block", type=int, default=18, help="Covariance block size (0 = full matrix).")
    p_render.add_argument("--title", default="")
    p_render.add_argument("--out", required=True)

    sub.add_parser("models", help="List catalog models.")

    p_lat = sub.add_parser("lattice", help="Print a model's lattice as JSON.")
    _add_model_args(p_lat)
    p_lat.add_argument("--out", default=None)

    return parser


def parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
