from __future__ import annotations

import logging
import math

import numpy as np
import pytest
from scipy.linalg import eigh

from shadowpca.core.errors import DimensionMismatchError, InvalidModelError, InvalidSizeError, ModelLatticeMismatchError
from shadowpca.lattice import chain, honeycomb, square
from shadowpca.model import (
    ModelTerms,
    PauliString,
    apply,
    bond_coefficient,
    cluster_ising,
    kitaev,
    tfim_1d,
    tfim_2d,
    xxz_alternating,
)


def _ground_energy(model: ModelTerms) -> float:
    return float(eigh(model.to_dense(), eigvals_only=True)[0])


# ---------------- tfim_1d ----------------

def test_tfim_zero_field_is_classical_bond() -> None:
    m = tfim_1d(2, 0.0)
    assert [t.label for t in m.terms] == ["-1 Z0 Z1"]
    assert _ground_energy(m) == pytest.approx(-1.0, abs=1e-12)


def test_tfim_two_sites_unit_field() -> None:
    m = tfim_1d(2, 1.0)
    assert len(m.terms) == 3
    assert _ground_energy(m) == pytest.approx(-math.sqrt(5.0), abs=1e-12)


def test_tfim_long_chain_term_count() -> None:
    assert len(tfim_1d(200, 1.0).terms) == 399


def test_tfim_carries_boundary_pinning_string() -> None:
    m = tfim_1d(4, 0.5)
    assert m.pinning == (PauliString(-1.0, ((0, "z"),)),)
    pinned = m.pinned(1e-6)
    assert len(pinned.terms) == len(m.terms) + 1
    assert pinned.flags[-1].startswith("pinned:")


# ---------------- cluster_ising ----------------

def test_cluster_field_only_is_product_state() -> None:
    m = cluster_ising(3, 4.0, 0.0, 0.0)
    assert len(m.terms) == 3
    assert _ground_energy(m) == pytest.approx(-12.0, abs=1e-12)


def test_cluster_pure_xzx_term_count() -> None:
    m = cluster_ising(12, 0.0, 0.0, 4.0)
    assert len(m.terms) == 10
    assert all(t.factors[1][1] == "z" for t in m.terms)


def test_cluster_periodic_wraps_both_sums() -> None:
    m = cluster_ising(5, 0.0, 1.0, 1.0, boundary="periodic")
    assert len(m.terms) == 10


def test_cluster_too_short_raises() -> None:
    with pytest.raises(InvalidSizeError):
        cluster_ising(2, 1.0, 1.0, 1.0)


def test_cluster_without_xzx_matches_rotated_tfim_spectrum() -> None:
    # -g0 Z - g1 XX is the TFIM with x and z exchanged
    L, h = 8, 0.7
    a = eigh(cluster_ising(L, h, 1.0, 0.0).to_dense(), eigvals_only=True)
    b = eigh(tfim_1d(L, h).to_dense(), eigvals_only=True)
    np.testing.assert_allclose(np.sort(a), np.sort(b), atol=1e-10)


# ---------------- xxz_alternating ----------------

def test_xxz_two_site_heisenberg_singlet() -> None:
    m = xxz_alternating(2, 0.0, 1.0)
    assert [t.coefficient for t in m.terms] == [1.0, 1.0, 1.0]
    assert _ground_energy(m) == pytest.approx(-3.0, abs=1e-12)


def test_bond_coefficient_uses_one_based_parity() -> None:
    assert bond_coefficient(0, 0.3) == pytest.approx(0.7)
    assert bond_coefficient(1, 0.3) == pytest.approx(1.3)


def test_xxz_full_dimerization_drops_zero_bonds() -> None:
    m = xxz_alternating(4, 1.0, 0.0)
    # bonds 0 and 2 vanish, bond 1 carries strength 2 in XX and YY only
    assert {t.sites for t in m.terms} == {(1, 2)}
    assert sorted(t.coefficient for t in m.terms) == [2.0, 2.0]


def test_xxz_periodic_wrap_keeps_alternation() -> None:
    m = xxz_alternating(4, 1.0, 0.0, boundary="periodic")
    # wrap bond (3, 0) is odd like bond (1, 2), so both survive with strength 2
    assert {t.sites for t in m.terms} == {(1, 2), (0, 3)}
    assert all(t.coefficient == pytest.approx(2.0) for t in m.terms)


def test_xxz_long_chain_term_count() -> None:
    assert len(xxz_alternating(200, 0.2, 2.5).terms) == 3 * 199


def test_xxz_large_alternation_is_flagged(caplog) -> None:
    with caplog.at_level(logging.WARNING):
        m = xxz_alternating(4, 1.5, 1.0)
    assert "negative_bond_strength" in m.flags
    assert "XXZ_NEGATIVE_BONDS" in caplog.text


def test_xxz_pinning_is_staggered() -> None:
    m = xxz_alternating(4, 0.0, 2.0)
    assert [p.coefficient for p in m.pinning] == [-1.0, 1.0, -1.0, 1.0]


# ---------------- tfim_2d / kitaev ----------------

def test_tfim_2d_zero_field_satisfies_all_bonds() -> None:
    m = tfim_2d(square(2, 2), 0.0)
    assert len(m.terms) == 4
    assert _ground_energy(m) == pytest.approx(-4.0, abs=1e-12)


def test_tfim_2d_term_counts() -> None:
    m = tfim_2d(square(3, 3), 3.04)
    assert sum(1 for t in m.terms if len(t.factors) == 2) == 12
    assert sum(1 for t in m.terms if len(t.factors) == 1) == 9


def test_kitaev_single_z_bond() -> None:
    m = kitaev(honeycomb(1, 1, "open"), 0.0, 0.0, 1.0)
    assert len(m.terms) == 1
    assert _ground_energy(m) == pytest.approx(-1.0, abs=1e-12)
    assert m.pinning == ()


def test_kitaev_periodic_2x2_has_twelve_terms() -> None:
    m = kitaev(honeycomb(2, 2, "periodic"), 1 / 3, 1 / 3, 1 / 3)
    assert len(m.terms) == 12
    for t in m.terms:
        assert t.factors[0][1] == t.factors[1][1]


@pytest.mark.parametrize(
    "build",
    [lambda: tfim_2d(chain(4), 1.0), lambda: kitaev(square(2, 2), 1.0, 1.0, 1.0)],
)
def test_wrong_lattice_kind_raises(build) -> None:
    with pytest.raises(ModelLatticeMismatchError):
        build()


# ---------------- apply ----------------

def test_apply_on_basis_states() -> None:
    up_up = np.array([1, 0, 0, 0], dtype=complex)
    np.testing.assert_allclose(apply(tfim_1d(2, 0.0), up_up), -up_up)

    field = ModelTerms(n_sites=1, terms=(PauliString(-0.8, ((0, "x"),)),), name="field")
    np.testing.assert_allclose(apply(field, np.array([1, 0], dtype=complex)), [0, -0.8])


def test_apply_matches_dense_and_is_linear() -> None:
    rng = np.random.default_rng(3)
    m = xxz_alternating(6, 0.3, 1.7)
    a = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    b = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    dense = m.to_dense()
    assert np.max(np.abs(apply(m, a) - dense @ a)) <= 1e-12
    np.testing.assert_allclose(apply(m, 2.0 * a + b), 2.0 * apply(m, a) + apply(m, b), atol=1e-12)


@pytest.mark.parametrize(
    "model",
    [
        tfim_1d(5, 0.9),
        cluster_ising(5, 1.0, 0.4, 0.8),
        xxz_alternating(5, 0.2, 0.5),
        tfim_2d(square(2, 3), 2.0),
        kitaev(honeycomb(1, 2, "periodic"), 0.3, 0.5, 0.2),
    ],
)
def test_operator_is_hermitian(model: ModelTerms) -> None:
    rng = np.random.default_rng(4)
    phi = rng.standard_normal(model.dim) + 1j * rng.standard_normal(model.dim)
    psi = rng.standard_normal(model.dim) + 1j * rng.standard_normal(model.dim)
    lhs = np.vdot(phi, apply(model, psi))
    rhs = np.conj(np.vdot(psi, apply(model, phi)))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_apply_rejects_wrong_length() -> None:
    with pytest.raises(DimensionMismatchError):
        apply(tfim_1d(3, 1.0), np.ones(4))


def test_terms_outside_model_are_rejected() -> None:
    with pytest.raises(InvalidModelError):
        ModelTerms(n_sites=2, terms=(PauliString.parse("Z2"),), name="bad")


def test_model_json_lists_terms_and_parameters() -> None:
    data = tfim_1d(3, 0.5).as_dict()
    assert data["params"] == {"L": 3, "h": 0.5, "boundary": "open"}
    assert len(data["terms"]) == 5
    assert data["lattice"]["kind"] == "chain"
