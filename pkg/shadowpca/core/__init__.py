# shadowpca/core/__init__.py
from .errors import (
    ShadowPcaError,
    CatalogError,
    ConvergenceError,
    DimensionMismatchError,
    EmptyDatasetError,
    InvalidModelError,
    InvalidSizeError,
    ModelLatticeMismatchError,
    SamplingError,
    SizeCapError,
    SolverConfigError,
    SpectrumError,
    SweepConfigError,
)

__all__ = [
    "ShadowPcaError",
    "CatalogError",
    "ConvergenceError",
    "DimensionMismatchError",
    "EmptyDatasetError",
    "InvalidModelError",
    "InvalidSizeError",
    "ModelLatticeMismatchError",
    "SamplingError",
    "SizeCapError",
    "SolverConfigError",
    "SpectrumError",
    "SweepConfigError",
]
