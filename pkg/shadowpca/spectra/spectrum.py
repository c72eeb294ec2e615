# shadowpca/spectra/spectrum.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import eigh

from shadowpca.core.errors import DimensionMismatchError, SpectrumError
from shadowpca.shadow import ShotDataset
from .encode import encode_dataset

NEGATIVE_EIGEN_TOL = 1e-10
SYMMETRY_TOL = 1e-12

# eigenvalues at or below this count as zero when forming the ratio
ZERO_EIGEN_TOL = 1e-12


@dataclass(frozen=True)
class SpectrumResult:
    """
    lambdas are principal-component standard deviations (sqrt of covariance
    eigenvalues), descending. eigenvalues keeps the raw clamped values.
    top_vectors holds the leading k eigenvectors as rows.
    """

    lambdas: np.ndarray
    eigenvalues: np.ndarray
    trace: float
    top_vectors: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return int(self.lambdas.shape[0])

    @property
    def ratio(self) -> Optional[float]:
        if self.dim < 2 or self.eigenvalues[1] <= ZERO_EIGEN_TOL:
            return None
        return float(self.lambdas[0] / self.lambdas[1])

    def leading(self, k: int) -> np.ndarray:
        return self.lambdas[: int(k)]


def eigen_spectrum(c: np.ndarray, k: int = 4, *, allow_negative: bool = False) -> SpectrumResult:
    """
    Dense symmetric eigendecomposition, descending.

    Eigenvalues below -1e-10 raise unless allow_negative is set (used for
    covariance approximations that are not guaranteed PSD); the remainder
    are clamped to zero before taking square roots.
    """
    c = np.asarray(c, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise SpectrumError(f"Covariance must be square (got shape {c.shape}).")
    scale = max(1.0, float(np.max(np.abs(c))) if c.size else 1.0)
    asym = float(np.max(np.abs(c - c.T))) if c.size else 0.0
    if asym > SYMMETRY_TOL * scale:
        raise SpectrumError(
            f"Covariance is not symmetric (max asymmetry {asym:.3e}).",
            details={"asymmetry": asym},
        )

    w, v = eigh(c)
    w, v = w[::-1], v[:, ::-1]
    if w.size and w[-1] < -NEGATIVE_EIGEN_TOL and not allow_negative:
        raise SpectrumError(
            f"Covariance has a negative eigenvalue {w[-1]:.3e}; the accumulator is corrupted.",
            details={"min_eigenvalue": float(w[-1])},
        )
    w = np.clip(w, 0.0, None)

    k = max(0, min(int(k), w.size))
    return SpectrumResult(
        lambdas=np.sqrt(w),
        eigenvalues=w,
        trace=float(np.trace(c)),
        top_vectors=np.ascontiguousarray(v[:, :k].T),
    )


def ratio(spec: SpectrumResult) -> float:
    r = spec.ratio
    if r is None:
        raise SpectrumError(
            "Second principal component is zero; lambda1/lambda2 is undefined.",
            details={"eigenvalues": spec.eigenvalues[:2].tolist()},
        )
    return r


def project(dataset: ShotDataset, vectors: np.ndarray, k: int = 2) -> np.ndarray:
    """Mean-centered coordinates of every shot along the first k eigenvectors: (N, k)."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    X = encode_dataset(dataset)
    if vectors.shape[1] != X.shape[1]:
        raise DimensionMismatchError(
            f"Eigenvectors have dimension {vectors.shape[1]}, shots have {X.shape[1]}.",
            details={"expected": X.shape[1], "got": vectors.shape[1]},
        )
    if k > vectors.shape[0]:
        raise DimensionMismatchError(f"Requested {k} components but only {vectors.shape[0]} vectors given.")
    return (X - X.mean(axis=0)) @ vectors[:k].T
