from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from shadowpca.core.errors import DimensionMismatchError, EmptyDatasetError, ShadowPcaError
from shadowpca.shadow import ShotDataset, SpinConfiguration, read_ndjson, write_ndjson


def test_configuration_views() -> None:
    cfg = SpinConfiguration("xzy", (1, -1, 1))
    assert cfg.L == 3
    assert cfg.outcomes == [("x", 1), ("z", -1), ("y", 1)]
    assert cfg.sign_string == "+-+"
    assert str(cfg) == "+X -Z +Y"


@pytest.mark.parametrize(
    "axes,signs,exc",
    [("xz", (1,), DimensionMismatchError), ("xq", (1, 1), ValueError), ("xz", (1, 0), ValueError)],
)
def test_configuration_validation(axes, signs, exc) -> None:
    with pytest.raises(exc):
        SpinConfiguration(axes, signs)


def test_dataset_round_trips_configurations() -> None:
    cfgs = [SpinConfiguration("xy", (1, -1)), SpinConfiguration("zz", (-1, -1))]
    ds = ShotDataset.from_configurations(cfgs, seed=5, source={"model": "m"})
    assert ds.n_shots == 2
    assert ds.L == 2
    assert len(ds) == 2
    assert ds.configurations == cfgs
    assert ds[1] == cfgs[1]


def test_dataset_rejects_empty_and_bad_entries() -> None:
    with pytest.raises(EmptyDatasetError):
        ShotDataset.from_configurations([], seed=0)
    with pytest.raises(EmptyDatasetError):
        ShotDataset(np.zeros((0, 2)), np.zeros((0, 2)), seed=0)
    with pytest.raises(ValueError):
        ShotDataset(np.full((1, 2), 3), np.ones((1, 2)), seed=0)
    with pytest.raises(DimensionMismatchError):
        ShotDataset(np.zeros((2, 2)), np.ones((2, 3)), seed=0)


def test_ndjson_file_layout(tmp_path: Path) -> None:
    ds = ShotDataset.from_configurations(
        [SpinConfiguration("xzy", (1, -1, 1)), SpinConfiguration("zzz", (1, 1, -1))],
        seed=17,
        source={"model": "tfim_1d(L=3)"},
    )
    p = write_ndjson(ds, tmp_path / "shots.ndjson")
    lines = p.read_text(encoding="utf-8").splitlines()
    assert lines[0] == '{"L": 3, "N": 2, "seed": 17, "source": {"model": "tfim_1d(L=3)"}}'
    assert lines[1] == '{"axes": "xzy", "signs": "+-+"}'

    back = read_ndjson(p)
    assert back.same_shots(ds)
    assert back.seed == 17
    assert back.source == {"model": "tfim_1d(L=3)"}


@pytest.mark.parametrize(
    "text,match",
    [
        ("", "empty"),
        ("not json\n", "Bad header"),
        ('{"L": 2, "N": 2, "seed": 0}\n{"axes": "xz", "signs": "++"}\n', "declares N=2"),
        ('{"L": 2, "N": 1, "seed": 0}\n{"axes": "xq", "signs": "++"}\n', "Bad shot record"),
        ('{"L": 2, "N": 1, "seed": 0}\n{"axes": "xzz", "signs": "+++"}\n', "Bad shot record"),
    ],
)
def test_read_ndjson_rejects_malformed_files(tmp_path: Path, text: str, match: str) -> None:
    p = tmp_path / "bad.ndjson"
    p.write_text(text, encoding="utf-8")
    with pytest.raises(ShadowPcaError, match=match):
        read_ndjson(p)
