# shadowpca/oracle/expectations.py
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from shadowpca.core.errors import ShadowPcaError
from shadowpca.core.limits import check_state_size
from shadowpca.groundstate import StateVector
from shadowpca.model.pauli import AXES, PAULI_MATRICES

BOUND_TOL = 1e-10


@dataclass(frozen=True)
class ExpectationTables:
    """
    one_point[i, a]       = <sigma^a_i>
    two_point[i, a, j, b] = <sigma^a_i sigma^b_j> for i != j

    Same-site entries of two_point are set to delta_ab; the covariance
    never reads them.
    """

    one_point: np.ndarray
    two_point: np.ndarray

    def __post_init__(self) -> None:
        L = self.one_point.shape[0]
        if self.one_point.shape != (L, 3) or self.two_point.shape != (L, 3, L, 3):
            raise ShadowPcaError(
                f"Expectation table shapes {self.one_point.shape}/{self.two_point.shape} are inconsistent."
            )
        bloch = np.linalg.norm(self.one_point, axis=1)
        if np.any(bloch > 1.0 + BOUND_TOL) or np.any(np.abs(self.two_point) > 1.0 + BOUND_TOL):
            raise ShadowPcaError("Expectation values exceed the Pauli bound of 1.")

    @property
    def L(self) -> int:
        return int(self.one_point.shape[0])

    def bloch_norms(self) -> np.ndarray:
        return np.linalg.norm(self.one_point, axis=1)


def _site_images(t: np.ndarray, n: int, site: int) -> np.ndarray:
    """(3, 2^n): sigma^x, sigma^y, sigma^z applied on `site` to the state tensor t."""
    out = []
    for a in AXES:
        img = np.tensordot(PAULI_MATRICES[a], t, axes=([1], [site]))
        out.append(np.moveaxis(img, 0, site).reshape(-1))
    return np.stack(out)


def expectations(state: StateVector, *, allow_large: bool = False) -> ExpectationTables:
    """
    All one- and two-point Pauli expectation values.

    <sigma^a_i sigma^b_j> = (sigma^a_i psi)^dagger (sigma^b_j psi), so each
    site block of the table is one small Gram product of site images.
    """
    n = state.n_sites
    check_state_size(n, allow_large=allow_large)
    psi = state.amplitudes
    t = state.tensor()

    # caching all 3n images costs 48 * n * 2^n bytes; above 16 sites recompute instead
    cache = {} if n <= 16 else None

    def images_of(i: int) -> np.ndarray:
        if cache is None:
            return _site_images(t, n, i)
        if i not in cache:
            cache[i] = _site_images(t, n, i)
        return cache[i]

    one = np.empty((n, 3))
    two = np.zeros((n, 3, n, 3))
    for i in range(n):
        img_i = images_of(i)
        one[i] = (img_i.conj() @ psi).real
        two[i, :, i, :] = np.eye(3)
        for j in range(i + 1, n):
            block = (img_i.conj() @ images_of(j).T).real
            two[i, :, j, :] = block
            two[j, :, i, :] = block.T
    return ExpectationTables(one_point=one, two_point=two)


def write_expectations_csv(tables: ExpectationTables, path: str | Path) -> Path:
    """Long format: i, alpha, j, beta, value; one-point rows leave j and beta empty."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    L = tables.L
    with open(p, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["i", "alpha", "j", "beta", "value"])
        for i in range(L):
            for a in range(3):
                w.writerow([i, AXES[a], "", "", repr(float(tables.one_point[i, a]))])
        for i in range(L):
            for j in range(i + 1, L):
                for a in range(3):
                    for b in range(3):
                        w.writerow([i, AXES[a], j, AXES[b], repr(float(tables.two_point[i, a, j, b]))])
    return p
