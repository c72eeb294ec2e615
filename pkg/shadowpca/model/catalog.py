# shadowpca/model/catalog.py
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import yaml

from shadowpca.core.errors import CatalogError
from shadowpca.core.hashing import sha256_file
from shadowpca.lattice import honeycomb, square
from .hamiltonians import cluster_ising, kitaev, tfim_1d, tfim_2d, xxz_alternating
from .terms import ModelTerms

CATALOG_FILE = "models.yml"
DEFAULT_METADATA_DIR = Path(__file__).resolve().parent.parent / "metadata"


@dataclass(frozen=True)
class ModelEntry:
    """One model as described by models.yml."""

    name: str
    label: str
    lattice: str
    size: Dict[str, Dict[str, Any]]
    params: Dict[str, Dict[str, Any]]
    boundary: Dict[str, Any]
    indexing: Optional[Dict[str, Any]] = None
    pinning: Optional[str] = None

    @property
    def schema(self) -> Dict[str, Dict[str, Any]]:
        """Flat schema over size keys, couplings, boundary and (square only) indexing."""
        out: Dict[str, Dict[str, Any]] = {}
        out.update(self.size)
        out.update(self.params)
        out["boundary"] = {"type": "str", **self.boundary}
        if self.indexing is not None:
            out["indexing"] = {"type": "str", **self.indexing}
        return out

    @property
    def coupling_names(self) -> Tuple[str, ...]:
        return tuple(self.params)


class ModelCatalog:
    """
    Loads models.yml into ModelEntry objects.

    After load_all():
        self.models      : dict[str, ModelEntry]
        self.file_hashes : dict[str, str]  (filename -> sha256)
    """

    def __init__(self, config_dir: str | Path = DEFAULT_METADATA_DIR):
        self.config_dir = Path(config_dir)
        self.models: Dict[str, ModelEntry] = {}
        self.file_hashes: Dict[str, str] = {}

    # ---------------------------------------------------------------------
    # YAML utility
    # ---------------------------------------------------------------------
    def _load_yaml(self, filename: str) -> dict:
        full_path = self.config_dir / filename
        if not full_path.exists():
            raise FileNotFoundError(f"Missing metadata file: {full_path}")

        with open(full_path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}

    # ---------------------------------------------------------------------
    # Public entry point
    # ---------------------------------------------------------------------
    def load_all(self) -> "ModelCatalog":
        self.models.clear()
        self.file_hashes.clear()

        data = self._load_yaml(CATALOG_FILE)
        self.file_hashes[CATALOG_FILE] = sha256_file(self.config_dir / CATALOG_FILE)

        models = data.get("models")
        if not isinstance(models, dict):
            raise ValueError(f"{CATALOG_FILE} is missing 'models' root node")

        for name, info in models.items():
            self.models[str(name)] = self._parse_entry(str(name), info)
        return self

    def _parse_entry(self, name: str, info: Any) -> ModelEntry:
        if not isinstance(info, dict):
            raise ValueError(f"Model '{name}' entry must be a mapping")
        if name not in BUILDERS:
            raise ValueError(f"Model '{name}' has no builder (known: {sorted(BUILDERS)})")

        lattice = info.get("lattice")
        if lattice not in ("chain", "square", "honeycomb"):
            raise ValueError(f"Model '{name}' has invalid lattice '{lattice}'")

        sections = {}
        for key in ("size", "params"):
            sec = info.get(key) or {}
            if not isinstance(sec, dict):
                raise ValueError(f"Model '{name}' '{key}' must be a mapping")
            for pname, pspec in sec.items():
                if not isinstance(pspec, dict) or "type" not in pspec:
                    raise ValueError(f"Model '{name}' {key} '{pname}' needs a 'type'")
            sections[key] = {str(k): dict(v) for k, v in sec.items()}

        boundary = info.get("boundary") or {"default": "open"}
        if not isinstance(boundary, dict):
            raise ValueError(f"Model '{name}' 'boundary' must be a mapping")

        indexing = info.get("indexing")
        if indexing is not None and not isinstance(indexing, dict):
            raise ValueError(f"Model '{name}' 'indexing' must be a mapping")

        return ModelEntry(
            name=name,
            label=str(info.get("label", name)),
            lattice=str(lattice),
            size=sections["size"],
            params=sections["params"],
            boundary=dict(boundary),
            indexing=dict(indexing) if indexing is not None else None,
            pinning=info.get("pinning"),
        )

    # ---------------------------------------------------------------------
    # Accessors
    # ---------------------------------------------------------------------
    def get(self, name: str) -> ModelEntry:
        entry = self.models.get(name)
        if entry is None:
            raise CatalogError(
                f"Unknown model '{name}'.",
                hint=f"Available models: {sorted(self.models)}",
                details={"model": name},
            )
        return entry

    def names(self) -> List[str]:
        return sorted(self.models)

    def resolver(self) -> "ModelParamResolver":
        return ModelParamResolver(self.models)

    def build(self, name: str, overrides: Optional[Mapping[str, Any]] = None) -> ModelTerms:
        self.get(name)
        values = self.resolver().resolve(name, overrides)
        return BUILDERS[name](values)


# ---------------------------------------------------------------------------
# Parameter resolution
# ---------------------------------------------------------------------------

class ModelParamResolver:
    """
    Resolve concrete builder kwargs from a model schema + overrides.
    """

    def __init__(self, models: Mapping[str, ModelEntry]):
        self._models = models

    def resolve(self, name: str, overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
        overrides = dict(overrides or {})
        meta = self._models.get(name)
        if not meta:
            raise CatalogError(
                f"No catalog entry for model '{name}'.",
                hint=f"Available models: {sorted(self._models)}",
                details={"model": name},
            ) from None

        schema = meta.schema
        for key in overrides:
            if key not in schema:
                raise CatalogError(
                    f"Unknown param '{key}' for model '{name}'.",
                    hint=f"Valid params: {sorted(schema)}",
                    details={"model": name, "param": key},
                ) from None

        resolved: Dict[str, Any] = {}
        for pname, spec in schema.items():
            if pname in overrides:
                value = overrides[pname]
            elif "default" in spec:
                value = spec["default"]
            elif spec.get("required", False):
                raise CatalogError(
                    f"Missing required param '{pname}' for model '{name}'.",
                    hint="Provide it as key=value or in the sweep file.",
                    details={"model": name, "param": pname},
                ) from None
            else:
                continue

            try:
                resolved[pname] = self._cast_param(value, spec.get("type"), spec.get("choices"))
            except (TypeError, ValueError) as e:
                raise CatalogError(
                    f"Invalid value for model '{name}' param '{pname}'.",
                    hint=str(e),
                    details={
                        "model": name,
                        "param": pname,
                        "value": value,
                        "expected_type": spec.get("type"),
                    },
                ) from None

        return resolved

    @staticmethod
    def _cast_param(value: Any, type_name: Any, choices: Any = None) -> Any:
        if type_name == "str":
            if not isinstance(value, str):
                raise TypeError(f"Expected str, got {type(value).__name__}")
            out: Any = value
        elif type_name == "int":
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"Expected int, got {type(value).__name__}")
            out = value
        elif type_name == "float":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TypeError(f"Expected float, got {type(value).__name__}")
            out = float(value)
        else:
            raise TypeError(f"Unknown schema type '{type_name}'")

        if choices is not None and out not in choices:
            raise ValueError(f"Expected one of {choices}, got {out!r}")
        return out


# ---------------------------------------------------------------------------
# Builders keyed by catalog name
# ---------------------------------------------------------------------------

def _build_tfim_1d(v: Dict[str, Any]) -> ModelTerms:
    return tfim_1d(v["L"], v["h"], boundary=v["boundary"])


def _build_cluster_ising(v: Dict[str, Any]) -> ModelTerms:
    return cluster_ising(v["L"], v["g0"], v["g1"], v["g2"], boundary=v["boundary"])


def _build_xxz(v: Dict[str, Any]) -> ModelTerms:
    return xxz_alternating(v["L"], v["delta"], v["Delta"], boundary=v["boundary"])


def _build_tfim_2d(v: Dict[str, Any]) -> ModelTerms:
    lat = square(v["Lx"], v["Ly"], v["boundary"], indexing=v.get("indexing", "snake"))
    return tfim_2d(lat, v["h"])


def _build_kitaev(v: Dict[str, Any]) -> ModelTerms:
    return kitaev(honeycomb(v["L"], v["W"], v["boundary"]), v["Jx"], v["Jy"], v["Jz"])


BUILDERS: Dict[str, Callable[[Dict[str, Any]], ModelTerms]] = {
    "tfim_1d": _build_tfim_1d,
    "cluster_ising": _build_cluster_ising,
    "xxz_alternating": _build_xxz,
    "tfim_2d": _build_tfim_2d,
    "kitaev": _build_kitaev,
}


def load_catalog(metadata_dir: str | Path = DEFAULT_METADATA_DIR) -> ModelCatalog:
    """Load models.yml, wrapping loader failures into CatalogError."""
    catalog = ModelCatalog(metadata_dir)
    try:
        catalog.load_all()
    except (FileNotFoundError, ValueError, yaml.YAMLError) as e:
        raise CatalogError(
            "Failed to load model catalog.",
            hint=str(e),
            details={"metadata_dir": str(metadata_dir)},
        ) from None
    return catalog
