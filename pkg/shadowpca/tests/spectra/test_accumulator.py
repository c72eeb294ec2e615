from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from shadowpca.core.errors import DimensionMismatchError, EmptyDatasetError, SpectrumError
from shadowpca.groundstate import ground_state
from shadowpca.model import cluster_ising, tfim_1d
from shadowpca.shadow import ShotDataset, sample_batch
from shadowpca.spectra import (
    CovarianceAccumulator,
    dataset_covariance,
    eigen_spectrum,
    encode_dataset,
    merge,
    read_covariance_csv,
    write_covariance_csv,
)


def _random_dataset(n: int, L: int, seed: int) -> ShotDataset:
    rng = np.random.default_rng(seed)
    return ShotDataset(rng.integers(0, 3, size=(n, L)), rng.choice([-1, 1], size=(n, L)), seed=seed)


def test_finalize_matches_numpy_population_covariance() -> None:
    X = encode_dataset(_random_dataset(300, 4, 1))
    c = CovarianceAccumulator(12).accumulate_batch(X).finalize()
    np.testing.assert_allclose(c, np.cov(X.T, bias=True), atol=1e-14)


def test_single_vector_accumulation_equals_batch() -> None:
    X = encode_dataset(_random_dataset(40, 3, 2))
    a = CovarianceAccumulator(9)
    for row in X:
        a.accumulate(row)
    b = CovarianceAccumulator(9).accumulate_batch(X)
    assert a.count == b.count == 40
    np.testing.assert_array_equal(a.finalize(), b.finalize())


def test_merge_is_order_independent() -> None:
    X = encode_dataset(_random_dataset(90, 3, 3))
    parts = [CovarianceAccumulator(9).accumulate_batch(X[i:i + 30]) for i in (0, 30, 60)]
    ab_c = merge(merge(parts[0], parts[1]), parts[2])
    c_ba = merge(parts[2], merge(parts[1], parts[0]))
    np.testing.assert_array_equal(ab_c.finalize(), c_ba.finalize())
    np.testing.assert_array_equal(ab_c.finalize(), CovarianceAccumulator(9).accumulate_batch(X).finalize())


def test_accumulator_errors() -> None:
    acc = CovarianceAccumulator(3)
    with pytest.raises(EmptyDatasetError):
        acc.mean
    with pytest.raises(DimensionMismatchError):
        acc.accumulate(np.ones(4))
    acc.accumulate(np.ones(3))
    with pytest.raises(SpectrumError, match="at least 2"):
        acc.finalize()
    with pytest.raises(DimensionMismatchError):
        acc.merge(CovarianceAccumulator(6))


def test_covariance_csv_is_lossless(tmp_path: Path) -> None:
    c = dataset_covariance(_random_dataset(100, 2, 4))
    back = read_covariance_csv(write_covariance_csv(c, tmp_path / "c.csv"))
    assert np.array_equal(back, c)


def test_read_covariance_rejects_non_square(tmp_path: Path) -> None:
    p = tmp_path / "c.csv"
    p.write_text("1,2,3\n4,5,6\n", encoding="utf-8")
    with pytest.raises(DimensionMismatchError):
        read_covariance_csv(p)


@pytest.mark.parametrize(
    "model",
    [tfim_1d(4, 0.8), tfim_1d(5, 1.3), cluster_ising(4, 1.0, 1.0, 1.0)],
    ids=lambda m: m.label,
)
def test_sampled_covariance_invariants(model) -> None:
    n = 3000
    ds = sample_batch(ground_state(model).state, n, seed=8)
    c = dataset_covariance(ds)
    L = model.n_sites
    spec = eigen_spectrum(c, 4)
    assert np.min(np.linalg.eigvalsh(c)) >= -1e-10
    assert spec.eigenvalues.sum() == pytest.approx(spec.trace, rel=1e-8)
    assert 8 * L / 9 - 5 / np.sqrt(n) <= spec.trace <= L + 5 / np.sqrt(n)
