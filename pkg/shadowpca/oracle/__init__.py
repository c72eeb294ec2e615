# shadowpca/oracle/__init__.py
from .expectations import ExpectationTables, expectations, write_expectations_csv
from .covariance import (
    COVARIANCE_MODES,
    ModeComparison,
    OracleResult,
    SampledComparison,
    analytic_covariance,
    compare_modes,
    compare_sampled,
    exact_trace,
    oracle_result,
    oracle_spectrum,
)

__all__ = [
    "ExpectationTables",
    "expectations",
    "write_expectations_csv",
    "COVARIANCE_MODES",
    "ModeComparison",
    "OracleResult",
    "SampledComparison",
    "analytic_covariance",
    "compare_modes",
    "compare_sampled",
    "exact_trace",
    "oracle_result",
    "oracle_spectrum",
]
