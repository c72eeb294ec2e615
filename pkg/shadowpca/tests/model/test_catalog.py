from __future__ import annotations

import textwrap
from pathlib import Path

import pytest

from shadowpca.core.errors import CatalogError, InvalidSizeError
from shadowpca.model import ModelCatalog, load_catalog


def _write(p: Path, text: str) -> None:
    (p / "models.yml").write_text(textwrap.dedent(text).lstrip(), encoding="utf-8")


@pytest.fixture(scope="module")
def catalog() -> ModelCatalog:
    return load_catalog()


def test_packaged_catalog_lists_all_models(catalog: ModelCatalog) -> None:
    assert catalog.names() == ["cluster_ising", "kitaev", "tfim_1d", "tfim_2d", "xxz_alternating"]
    assert set(catalog.file_hashes) == {"models.yml"}
    assert len(catalog.file_hashes["models.yml"]) == 64


def test_build_uses_defaults_and_overrides(catalog: ModelCatalog) -> None:
    m = catalog.build("tfim_1d", {"L": 4, "h": 0.25})
    assert m.n_sites == 4
    assert m.params["h"] == 0.25
    assert m.params["boundary"] == "open"


def test_build_each_model_with_defaults(catalog: ModelCatalog) -> None:
    sizes = {"tfim_1d": 12, "cluster_ising": 10, "xxz_alternating": 12, "tfim_2d": 9, "kitaev": 8}
    for name, n in sizes.items():
        assert catalog.build(name).n_sites == n


def test_integer_values_are_accepted_for_float_params(catalog: ModelCatalog) -> None:
    m = catalog.build("cluster_ising", {"g0": 4, "g1": 0, "g2": 0, "L": 3})
    assert m.params["g0"] == 4.0
    assert isinstance(m.params["g0"], float)


@pytest.mark.parametrize(
    "overrides,match",
    [
        ({"hx": 1.0}, "Unknown param"),
        ({"L": "12"}, "Invalid value"),
        ({"L": 4.0}, "Invalid value"),
        ({"h": True}, "Invalid value"),
        ({"boundary": "twisted"}, "Invalid value"),
    ],
)
def test_resolver_rejects_bad_overrides(catalog: ModelCatalog, overrides: dict, match: str) -> None:
    with pytest.raises(CatalogError, match=match):
        catalog.build("tfim_1d", overrides)


def test_unknown_model_raises_catalog_error(catalog: ModelCatalog) -> None:
    with pytest.raises(CatalogError) as ei:
        catalog.build("hubbard")
    assert "tfim_1d" in (ei.value.hint or "")


def test_builder_errors_pass_through(catalog: ModelCatalog) -> None:
    with pytest.raises(InvalidSizeError):
        catalog.build("cluster_ising", {"L": 2})


def test_kitaev_entry_has_no_pinning(catalog: ModelCatalog) -> None:
    assert catalog.get("kitaev").pinning is None
    assert catalog.get("kitaev").boundary["default"] == "periodic"


def test_missing_required_param(tmp_path: Path) -> None:
    _write(
        tmp_path,
        """
        models:
          tfim_1d:
            lattice: chain
            size:
              L: {type: int, default: 4}
            params:
              h: {type: float, required: true}
        """,
    )
    cat = load_catalog(tmp_path)
    with pytest.raises(CatalogError, match="Missing required param 'h'"):
        cat.build("tfim_1d")
    assert cat.build("tfim_1d", {"h": 0.5}).n_sites == 4


def test_loader_wraps_missing_file(tmp_path: Path) -> None:
    with pytest.raises(CatalogError) as ei:
        load_catalog(tmp_path)
    assert "Missing metadata file" in (ei.value.hint or "")
    assert ei.value.exit_code == 2


@pytest.mark.parametrize(
    "text,match",
    [
        ("nope: 1\n", "missing 'models'"),
        ("models:\n  potts: {lattice: chain}\n", "no builder"),
        ("models:\n  tfim_1d: {lattice: cube}\n", "invalid lattice"),
        ("models:\n  tfim_1d: {lattice: chain, params: {h: {default: 1.0}}}\n", "needs a 'type'"),
    ],
)
def test_loader_rejects_malformed_catalogs(tmp_path: Path, text: str, match: str) -> None:
    _write(tmp_path, text)
    with pytest.raises(ValueError, match=match):
        ModelCatalog(tmp_path).load_all()
    with pytest.raises(CatalogError):
        load_catalog(tmp_path)
