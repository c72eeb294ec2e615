# shadowpca/spectra/encode.py
from __future__ import annotations

import numpy as np

from shadowpca.model.pauli import AXIS_INDEX
from shadowpca.shadow import ShotDataset, SpinConfiguration


def encode(config: SpinConfiguration) -> np.ndarray:
    """Signed one-hot triple per site, site-major: +X -> (1,0,0), -Y -> (0,-1,0)."""
    v = np.zeros(3 * config.L)
    for i, (axis, sign) in enumerate(config.outcomes):
        v[3 * i + AXIS_INDEX[axis]] = sign
    return v


def encode_dataset(dataset: ShotDataset) -> np.ndarray:
    """All shots at once: (N, 3L) float matrix."""
    n, L = dataset.axes.shape
    out = np.zeros((n, 3 * L))
    cols = 3 * np.arange(L)[None, :] + dataset.axes.astype(np.int64)
    out[np.arange(n)[:, None], cols] = dataset.signs
    return out
