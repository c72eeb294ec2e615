# shadowpca/oracle/covariance.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from shadowpca.core.errors import ShadowPcaError
from shadowpca.groundstate import GroundStateReport, SolverOptions, ground_state
from shadowpca.model import ModelTerms
from shadowpca.spectra import SpectrumResult, eigen_spectrum
from .expectations import ExpectationTables, expectations

log = logging.getLogger(__name__)

COVARIANCE_MODES = ("exact", "paper")


def analytic_covariance(tables: ExpectationTables, mode: str = "exact") -> np.ndarray:
    """
    Infinite-shot covariance of encoded randomized Pauli measurements.

    exact: same-site block delta_ab/3 - m_a m_b/9
    paper: same-site block diag (1 - m_a^2)/3
    Cross-site blocks are (<s^a_i s^b_j> - m_a m_b)/9 in both modes.
    """
    if mode not in COVARIANCE_MODES:
        raise ShadowPcaError(f"Unknown covariance mode '{mode}'.", hint=f"Use one of {list(COVARIANCE_MODES)}.")
    L = tables.L
    m = tables.one_point
    connected = (tables.two_point - np.einsum("ia,jb->iajb", m, m)) / 9.0
    for i in range(L):
        if mode == "exact":
            connected[i, :, i, :] = np.eye(3) / 3.0 - np.outer(m[i], m[i]) / 9.0
        else:
            connected[i, :, i, :] = np.diag((1.0 - m[i] ** 2) / 3.0)
    c = connected.reshape(3 * L, 3 * L)
    return 0.5 * (c + c.T)


def exact_trace(tables: ExpectationTables) -> float:
    """sum_i (1 - |Bloch_i|^2 / 9)."""
    return float(np.sum(1.0 - tables.bloch_norms() ** 2 / 9.0))


@dataclass(frozen=True)
class OracleResult:
    report: GroundStateReport
    tables: ExpectationTables
    covariance: np.ndarray
    spectrum: SpectrumResult
    mode: str


def oracle_result(
    model: ModelTerms,
    mode: str = "exact",
    *,
    solver: Optional[SolverOptions] = None,
    k: int = 4,
    report: Optional[GroundStateReport] = None,
) -> OracleResult:
    """Ground state -> expectation tables -> analytic covariance -> spectrum."""
    report = report or ground_state(model, solver)
    tables = expectations(report.state, allow_large=True)
    c = analytic_covariance(tables, mode)
    spec = eigen_spectrum(c, k, allow_negative=(mode == "paper"))
    log.debug("ORACLE_SPECTRUM model=%s mode=%s lambda1=%.6g", model.label, mode, spec.lambdas[0])
    return OracleResult(report=report, tables=tables, covariance=c, spectrum=spec, mode=mode)


def oracle_spectrum(
    model: ModelTerms,
    mode: str = "exact",
    *,
    solver: Optional[SolverOptions] = None,
    k: int = 4,
) -> SpectrumResult:
    return oracle_result(model, mode, solver=solver, k=k).spectrum


# ---------------------------------------------------------------------------
# Comparisons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModeComparison:
    max_same_site_deviation: float
    max_cross_site_deviation: float
    ratio_exact: Optional[float]
    ratio_paper: Optional[float]
    lambda1_exact: float
    lambda1_paper: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _block_masks(L: int):
    site = np.repeat(np.arange(L), 3)
    same = site[:, None] == site[None, :]
    return same, ~same


def compare_modes(tables: ExpectationTables, *, k: int = 4) -> ModeComparison:
    exact = analytic_covariance(tables, "exact")
    paper = analytic_covariance(tables, "paper")
    diff = np.abs(exact - paper)
    same, cross = _block_masks(tables.L)
    se, sp = eigen_spectrum(exact, k), eigen_spectrum(paper, k, allow_negative=True)
    return ModeComparison(
        max_same_site_deviation=float(diff[same].max()),
        max_cross_site_deviation=float(diff[cross].max()) if cross.any() else 0.0,
        ratio_exact=se.ratio,
        ratio_paper=sp.ratio,
        lambda1_exact=float(se.lambdas[0]),
        lambda1_paper=float(sp.lambdas[0]),
    )


@dataclass(frozen=True)
class SampledComparison:
    max_abs_covariance_diff: float
    lambda_diff: np.ndarray
    ratio_sampled: Optional[float]
    ratio_oracle: Optional[float]

    @property
    def ratio_diff(self) -> Optional[float]:
        if self.ratio_sampled is None or self.ratio_oracle is None:
            return None
        return self.ratio_sampled - self.ratio_oracle

    def as_dict(self) -> dict:
        return {
            "max_abs_covariance_diff": self.max_abs_covariance_diff,
            "lambda_diff": [float(x) for x in self.lambda_diff],
            "ratio_sampled": self.ratio_sampled,
            "ratio_oracle": self.ratio_oracle,
            "ratio_diff": self.ratio_diff,
        }


def compare_sampled(c_sampled: np.ndarray, c_oracle: np.ndarray, *, k: int = 4) -> SampledComparison:
    if c_sampled.shape != c_oracle.shape:
        raise ShadowPcaError(f"Covariance shapes differ: {c_sampled.shape} vs {c_oracle.shape}.")
    ss, so = eigen_spectrum(c_sampled, k), eigen_spectrum(c_oracle, k)
    return SampledComparison(
        max_abs_covariance_diff=float(np.max(np.abs(c_sampled - c_oracle))),
        lambda_diff=ss.lambdas[:k] - so.lambdas[:k],
        ratio_sampled=ss.ratio,
        ratio_oracle=so.ratio,
    )
