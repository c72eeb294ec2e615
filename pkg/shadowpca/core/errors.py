# shadowpca/core/errors.py
from __future__ import annotations


class ShadowPcaError(Exception):
    """
    Base class for all expected operational errors in shadowpca.
    """

    #: Stable machine-readable identifier (CLI output, sweep rows, manifests)
    code: str = "unknown"

    #: Process exit code used by the CLI when this error escapes a command
    exit_code: int = 1

    def __init__(
        self,
        message: str,
        *,
        hint: str | None = None,
        details: dict | None = None,
    ):
        super().__init__(message)
        self.message = message
        self.hint = hint
        self.details = details or {}

    def __str__(self) -> str:
        return self.message


# ---------------------------------------------------------------------------
# Configuration errors (nothing has been computed yet)
# ---------------------------------------------------------------------------

class CatalogError(ShadowPcaError):
    """
    Model catalog metadata is missing or malformed.

    Examples:
      - models.yml not found
      - unknown model name
      - parameter of the wrong type
    """
    code = "catalog"
    exit_code = 2


class SweepConfigError(ShadowPcaError):
    """
    Sweep specification is invalid.

    Examples:
      - linear grid with fewer than 2 steps
      - ternary grid with non-positive total
      - unknown mode
    """
    code = "sweep_config"
    exit_code = 2


class SolverConfigError(ShadowPcaError):
    """
    Ground-state solver options are inconsistent with the model.

    Examples:
      - pinning required by policy but the model defines none
      - non-positive tolerance
    """
    code = "solver_config"
    exit_code = 2


# ---------------------------------------------------------------------------
# Construction errors (lattices, models, states)
# ---------------------------------------------------------------------------

class InvalidSizeError(ShadowPcaError):
    """Lattice or model size below the allowed minimum."""
    code = "invalid_size"


class LatticeError(ShadowPcaError):
    """
    Lattice description is inconsistent.

    Examples:
      - unknown boundary, kind, indexing or bond type
      - bond endpoint outside the site range, self-bond, duplicate bond
      - honeycomb site touching two bonds of the same type
    """
    code = "lattice"


class SizeCapError(ShadowPcaError):
    """
    Requested state vector or dense matrix exceeds the configured cap.

    Examples:
      - ground state of a 128-site honeycomb
      - shadow reconstruction with L > 6
    """
    code = "size_cap"


class ModelLatticeMismatchError(ShadowPcaError):
    """Model builder received a lattice of the wrong kind."""
    code = "model_lattice_mismatch"


class InvalidModelError(ShadowPcaError):
    """
    Pauli strings or model terms violate their invariants.

    Examples:
      - a site repeated inside one Pauli string
      - term site index outside the lattice
      - non-finite coefficient
    """
    code = "invalid_model"


class DimensionMismatchError(ShadowPcaError):
    """Vector or matrix dimensions do not match."""
    code = "dimension_mismatch"


# ---------------------------------------------------------------------------
# Numerical / data errors
# ---------------------------------------------------------------------------

class ConvergenceError(ShadowPcaError):
    """
    Iterative solver did not reach the requested tolerance.

    details["best_residual"] holds the smallest residual norm reached.
    """
    code = "convergence"


class SamplingError(ShadowPcaError):
    """Measurement simulation reached a zero-norm branch (internal guard)."""
    code = "sampling"


class EmptyDatasetError(ShadowPcaError):
    """Operation requires at least one shot."""
    code = "empty_dataset"


class SpectrumError(ShadowPcaError):
    """
    Covariance or spectrum is unusable.

    Examples:
      - asymmetric covariance matrix
      - eigenvalue below the clamp threshold (corrupted accumulator)
      - lambda_2 == 0 when a ratio is requested
      - finalize with fewer than 2 accumulated vectors
    """
    code = "spectrum"
