# shadowpca/groundstate/entropy.py
from __future__ import annotations

from typing import List

import numpy as np
from scipy.linalg import svdvals

from shadowpca.core.errors import DimensionMismatchError
from .state import StateVector

SCHMIDT_CUTOFF = 1e-14


def entanglement_entropy(state: StateVector, cut: int) -> float:
    """Von Neumann entropy (nats) of the first `cut` sites."""
    n = state.n_sites
    if not 0 < cut < n:
        raise DimensionMismatchError(
            f"cut must satisfy 0 < cut < {n} (got {cut}).",
            details={"cut": cut, "n_sites": n},
        )
    s = svdvals(state.amplitudes.reshape(1 << cut, 1 << (n - cut)))
    p = s * s
    p = p[p > SCHMIDT_CUTOFF]
    return float(-np.sum(p * np.log(p)))


def entropy_profile(state: StateVector) -> List[float]:
    return [entanglement_entropy(state, cut) for cut in range(1, state.n_sites)]
