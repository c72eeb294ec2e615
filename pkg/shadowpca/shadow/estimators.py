# shadowpca/shadow/estimators.py
from __future__ import annotations

from functools import reduce
from typing import Tuple

import numpy as np

from shadowpca.core.errors import DimensionMismatchError, EmptyDatasetError, SizeCapError
from shadowpca.core.limits import MAX_DENSE_SHADOW_SITES
from shadowpca.model.pauli import AXIS_INDEX, PauliString
from .dataset import ShotDataset
from .sampler import ROTATIONS

_I2 = np.eye(2, dtype=complex)


def _snapshot_factor(axis: int, sign: int) -> np.ndarray:
    """3|s><s| - I for the eigenvector of `axis` with eigenvalue `sign`."""
    bra = ROTATIONS[axis][0 if sign > 0 else 1]
    ket = bra.conj()
    return 3.0 * np.outer(ket, bra) - _I2


def reconstruct_shadow(dataset: ShotDataset) -> np.ndarray:
    """
    Shadow density-matrix estimate: mean over shots of the tensor product of
    single-site inverted-channel snapshots. Identical shots are folded first.
    """
    L = dataset.L
    if L > MAX_DENSE_SHADOW_SITES:
        raise SizeCapError(
            f"Dense shadow reconstruction needs L <= {MAX_DENSE_SHADOW_SITES} (got {L}).",
            details={"L": L, "cap": MAX_DENSE_SHADOW_SITES},
        )

    # code 0..5 per site: axis * 2 + (sign == -1)
    codes = dataset.axes.astype(np.int64) * 2 + (dataset.signs < 0)
    rows, counts = np.unique(codes, axis=0, return_counts=True)

    table = [_snapshot_factor(c // 2, 1 if c % 2 == 0 else -1) for c in range(6)]

    rho = np.zeros((1 << L, 1 << L), dtype=complex)
    for row, count in zip(rows, counts):
        rho += count * reduce(np.kron, (table[c] for c in row))
    rho /= dataset.n_shots
    # exact Hermitian symmetrization removes rounding asymmetry
    return 0.5 * (rho + rho.conj().T)


def estimate_observable(dataset: ShotDataset, obs: PauliString) -> Tuple[float, float]:
    """
    Shadow estimate of <obs>: per shot the product over the support of
    3*sign when the measured axis matches and 0 otherwise.

    Returns (mean, standard error of the mean).
    """
    if dataset.n_shots == 0:
        raise EmptyDatasetError("Cannot estimate from an empty dataset.")
    if obs.max_site >= dataset.L:
        raise DimensionMismatchError(
            f"Observable {obs.label} touches site {obs.max_site} but shots have L={dataset.L}.",
        )

    est = np.full(dataset.n_shots, obs.coefficient, dtype=float)
    for site, axis in obs.factors:
        match = dataset.axes[:, site] == AXIS_INDEX[axis]
        est *= np.where(match, 3.0 * dataset.signs[:, site], 0.0)

    mean = float(est.mean())
    if dataset.n_shots < 2:
        return mean, float("nan")
    stderr = float(est.std(ddof=1) / np.sqrt(dataset.n_shots))
    return mean, stderr
