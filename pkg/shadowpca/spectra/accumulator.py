# shadowpca/spectra/accumulator.py
from __future__ import annotations

from pathlib import Path

import numpy as np

from shadowpca.core.errors import DimensionMismatchError, EmptyDatasetError, SpectrumError
from shadowpca.shadow import ShotDataset
from .encode import encode_dataset


class CovarianceAccumulator:
    """
    Streaming raw moments of encoded shot vectors.

    Holds count, the running sum and the running sum of outer products.
    Entries of encoded vectors are 0/+1/-1, so the moments are exact
    integers in float64 and merging in any order gives identical results.
    Single owner: callers merge independently built accumulators instead
    of sharing one.
    """

    def __init__(self, dim: int):
        self.dim = int(dim)
        self.count = 0
        self.sum = np.zeros(self.dim)
        self.outer_sum = np.zeros((self.dim, self.dim))

    def _check(self, dim: int) -> None:
        if dim != self.dim:
            raise DimensionMismatchError(
                f"Vector dimension {dim} does not match accumulator dimension {self.dim}.",
                details={"expected": self.dim, "got": dim},
            )

    def accumulate(self, v: np.ndarray) -> "CovarianceAccumulator":
        v = np.asarray(v, dtype=float).reshape(-1)
        self._check(v.shape[0])
        self.count += 1
        self.sum += v
        self.outer_sum += np.outer(v, v)
        return self

    def accumulate_batch(self, X: np.ndarray) -> "CovarianceAccumulator":
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise DimensionMismatchError(f"Batch must be 2-D (got shape {X.shape}).")
        self._check(X.shape[1])
        self.count += X.shape[0]
        self.sum += X.sum(axis=0)
        self.outer_sum += X.T @ X
        return self

    def merge(self, other: "CovarianceAccumulator") -> "CovarianceAccumulator":
        self._check(other.dim)
        out = CovarianceAccumulator(self.dim)
        out.count = self.count + other.count
        out.sum = self.sum + other.sum
        out.outer_sum = self.outer_sum + other.outer_sum
        return out

    @property
    def mean(self) -> np.ndarray:
        if self.count == 0:
            raise EmptyDatasetError("Accumulator is empty.")
        return self.sum / self.count

    def finalize(self) -> np.ndarray:
        """Population covariance outer_sum/count - mean mean^T, symmetrized."""
        if self.count < 2:
            raise SpectrumError(
                f"Covariance needs at least 2 samples (got {self.count}).",
                details={"count": self.count},
            )
        mean = self.sum / self.count
        c = self.outer_sum / self.count - np.outer(mean, mean)
        return 0.5 * (c + c.T)


def merge(a: CovarianceAccumulator, b: CovarianceAccumulator) -> CovarianceAccumulator:
    return a.merge(b)


def dataset_covariance(dataset: ShotDataset, *, chunk: int = 4096) -> np.ndarray:
    acc = CovarianceAccumulator(3 * dataset.L)
    X = encode_dataset(dataset)
    for start in range(0, X.shape[0], chunk):
        acc.accumulate_batch(X[start:start + chunk])
    return acc.finalize()


def write_covariance_csv(c: np.ndarray, path: str | Path) -> Path:
    """Row-major, one matrix row per line, no header."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(p, np.asarray(c, dtype=float), delimiter=",", fmt="%.17g")
    return p


def read_covariance_csv(path: str | Path) -> np.ndarray:
    c = np.loadtxt(Path(path), delimiter=",", ndmin=2)
    if c.shape[0] != c.shape[1]:
        raise DimensionMismatchError(f"Covariance file {path} is not square (shape {c.shape}).")
    return c
