# shadowpca/spectra/__init__.py
from .encode import encode, encode_dataset
from .accumulator import (
    CovarianceAccumulator,
    dataset_covariance,
    merge,
    read_covariance_csv,
    write_covariance_csv,
)
from .spectrum import SpectrumResult, eigen_spectrum, project, ratio

__all__ = [
    "encode",
    "encode_dataset",
    "CovarianceAccumulator",
    "dataset_covariance",
    "merge",
    "read_covariance_csv",
    "write_covariance_csv",
    "SpectrumResult",
    "eigen_spectrum",
    "project",
    "ratio",
]
