from __future__ import annotations

import numpy as np
import pytest

from shadowpca.core.errors import ShadowPcaError
from shadowpca.groundstate import SolverOptions, StateVector, ground_state
from shadowpca.lattice import honeycomb, square
from shadowpca.model import cluster_ising, kitaev, tfim_1d, tfim_2d, xxz_alternating
from shadowpca.model.pauli import AXIS_INDEX
from shadowpca.oracle import (
    analytic_covariance,
    compare_modes,
    compare_sampled,
    exact_trace,
    expectations,
    oracle_result,
    oracle_spectrum,
)
from shadowpca.shadow import sample_batch
from shadowpca.spectra import dataset_covariance, eigen_spectrum

PLUS4 = StateVector.from_amplitudes(np.ones(16))


def test_mode_difference_on_plus_product_state() -> None:
    t = expectations(PLUS4)
    exact = analytic_covariance(t, "exact")
    paper = analytic_covariance(t, "paper")
    for i in range(4):
        assert exact[3 * i, 3 * i] == pytest.approx(2 / 9, abs=1e-12)
        assert paper[3 * i, 3 * i] == pytest.approx(0.0, abs=1e-12)
    site = np.repeat(np.arange(4), 3)
    cross = site[:, None] != site[None, :]
    assert np.max(np.abs(exact[cross] - paper[cross])) <= 1e-12

    cmp = compare_modes(t)
    assert cmp.max_same_site_deviation == pytest.approx(2 / 9, abs=1e-12)
    assert cmp.max_cross_site_deviation <= 1e-12


def test_exact_same_site_block_has_off_diagonal_terms() -> None:
    # Bloch vector along (x+z)/sqrt(2)
    s = StateVector.from_amplitudes([np.cos(np.pi / 8), np.sin(np.pi / 8)])
    t = expectations(s)
    c = analytic_covariance(t, "exact")
    m = t.one_point[0]
    assert c[0, 2] == pytest.approx(-m[0] * m[2] / 9, abs=1e-14)
    assert analytic_covariance(t, "paper")[0, 2] == 0.0


def test_unknown_mode_rejected() -> None:
    with pytest.raises(ShadowPcaError, match="Unknown covariance mode"):
        analytic_covariance(expectations(PLUS4), "approx")


@pytest.mark.parametrize(
    "model",
    [tfim_1d(6, 0.7), cluster_ising(6, 1.0, 1.0, 1.0), xxz_alternating(6, 0.4, 1.0)],
    ids=lambda m: m.name,
)
def test_exact_trace_identity(model) -> None:
    res = oracle_result(model, "exact")
    assert res.spectrum.trace == pytest.approx(exact_trace(res.tables), abs=1e-10)
    assert res.spectrum.eigenvalues.sum() == pytest.approx(res.spectrum.trace, rel=1e-8)
    assert np.min(np.linalg.eigvalsh(res.covariance)) >= -1e-10


def test_oracle_reuses_given_report() -> None:
    m = tfim_1d(4, 1.0)
    report = ground_state(m)
    res = oracle_result(m, "paper", report=report)
    assert res.report is report
    assert res.mode == "paper"
    assert oracle_spectrum(m).lambdas[0] == pytest.approx(oracle_result(m).spectrum.lambdas[0])


def test_compare_sampled_reports_differences() -> None:
    c = np.diag([1.0, 0.5, 0.25])
    out = compare_sampled(c + 0.01 * np.eye(3), c, k=2)
    assert out.max_abs_covariance_diff == pytest.approx(0.01)
    assert out.lambda_diff.shape == (2,)
    assert out.ratio_diff is not None
    assert set(out.as_dict()) == {"max_abs_covariance_diff", "lambda_diff", "ratio_sampled", "ratio_oracle", "ratio_diff"}
    with pytest.raises(ShadowPcaError):
        compare_sampled(np.eye(2), np.eye(3))


@pytest.mark.integration
def test_sampled_plus_state_follows_exact_not_paper_mode() -> None:
    t = expectations(PLUS4)
    c = dataset_covariance(sample_batch(PLUS4, 50_000, seed=9))
    assert np.max(np.abs(c - analytic_covariance(t, "exact"))) <= 0.02
    assert np.max(np.abs(c - analytic_covariance(t, "paper"))) > 0.15


@pytest.mark.integration
@pytest.mark.parametrize(
    "model,opts",
    [
        (tfim_1d(6, 1.0), SolverOptions()),
        (cluster_ising(6, 1.0, 1.5, 1.0), SolverOptions()),
        (xxz_alternating(6, 0.3, 1.2), SolverOptions()),
        (tfim_2d(square(2, 3), 2.5), SolverOptions()),
        (kitaev(honeycomb(2, 2, "periodic"), 0.3, 0.3, 0.4), SolverOptions(pinning_policy="cat")),
    ],
    ids=["tfim_1d", "cluster_ising", "xxz_alternating", "tfim_2d", "kitaev"],
)
def test_sampled_covariance_matches_oracle(model, opts) -> None:
    res = oracle_result(model, "exact", solver=opts)
    ds = sample_batch(res.report.state, 50_000, seed=31)
    c = dataset_covariance(ds)
    assert compare_sampled(c, res.covariance).max_abs_covariance_diff <= 0.02
    assert eigen_spectrum(c).trace == pytest.approx(res.spectrum.trace, abs=0.05)


@pytest.mark.integration
def test_kitaev_isotropic_path_spectrum_is_set_by_bond_correlations() -> None:
    # zero magnetization and only same-type bond correlations leave 3x3
    # blocks with eigenvalues 1/3 +- c/9, so lambda1 tracks the strongest bond
    lattice = honeycomb(2, 2, "periodic")
    opts = SolverOptions(pinning_policy="cat")
    for jx in np.linspace(0.05, 0.45, 9):
        res = oracle_result(kitaev(lattice, jx, jx, 1.0 - 2.0 * jx), "exact", solver=opts)
        two = res.tables.two_point
        strongest = max(abs(two[b.i, AXIS_INDEX[b.kind], b.j, AXIS_INDEX[b.kind]]) for b in lattice.bonds)
        lam = res.spectrum.lambdas
        assert lam[0] ** 2 == pytest.approx(1.0 / 3.0 + strongest / 9.0, abs=1e-8)
        assert 0.85 <= res.spectrum.ratio <= 1.25
