from __future__ import annotations

import numpy as np

from shadowpca.shadow import ShotDataset, SpinConfiguration
from shadowpca.spectra import encode, encode_dataset


def test_encode_places_signed_one_hot_per_site() -> None:
    v = encode(SpinConfiguration("xyz", (1, -1, 1)))
    np.testing.assert_array_equal(v, [1, 0, 0, 0, -1, 0, 0, 0, 1])


def test_encoded_vectors_have_norm_sqrt_l() -> None:
    v = encode(SpinConfiguration("zzxy", (-1, 1, 1, -1)))
    assert np.dot(v, v) == 4


def test_dataset_encoding_matches_per_shot_encoding() -> None:
    rng = np.random.default_rng(0)
    axes = rng.integers(0, 3, size=(50, 5))
    signs = rng.choice([-1, 1], size=(50, 5))
    ds = ShotDataset(axes, signs, seed=0)
    X = encode_dataset(ds)
    assert X.shape == (50, 15)
    for k in range(50):
        np.testing.assert_array_equal(X[k], encode(ds[k]))
