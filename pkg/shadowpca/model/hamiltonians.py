# shadowpca/model/hamiltonians.py
from __future__ import annotations

import logging
import math
from typing import List, Optional

from shadowpca.core.errors import InvalidModelError, InvalidSizeError, ModelLatticeMismatchError
from shadowpca.lattice import Lattice, chain
from .pauli import PauliString
from .terms import ModelTerms

log = logging.getLogger(__name__)


def _finite(name: str, value: float) -> float:
    v = float(value)
    if not math.isfinite(v):
        raise InvalidModelError(f"Parameter {name} must be finite (got {value!r}).")
    return v


def _add(terms: List[PauliString], coefficient: float, *factors) -> None:
    # Zero-weight strings are dropped so term counts reflect the physics
    if coefficient != 0.0:
        terms.append(PauliString(coefficient, tuple(factors)))


def _require_kind(lattice: Lattice, kind: str, model: str) -> None:
    if lattice.kind != kind:
        raise ModelLatticeMismatchError(
            f"{model} needs a {kind} lattice (got {lattice.kind}).",
            details={"model": model, "expected": kind, "got": lattice.kind},
        )


# ---------------------------------------------------------------------------
# 1D transverse-field Ising
# ---------------------------------------------------------------------------

def tfim_1d(L: int, h: float, *, boundary: str = "open") -> ModelTerms:
    """H = -sum_<ij> Z_i Z_j - h sum_i X_i on a chain."""
    h = _finite("h", h)
    lat = chain(L, boundary)
    terms: List[PauliString] = []
    for b in lat.bonds:
        _add(terms, -1.0, (b.i, "z"), (b.j, "z"))
    for i in range(lat.n_sites):
        _add(terms, -h, (i, "x"))
    return ModelTerms(
        n_sites=lat.n_sites,
        terms=tuple(terms),
        name="tfim_1d",
        params={"L": lat.n_sites, "h": h, "boundary": lat.boundary},
        pinning=(PauliString(-1.0, ((0, "z"),)),),
        lattice=lat,
    )


# ---------------------------------------------------------------------------
# Cluster-Ising chain
# ---------------------------------------------------------------------------

def cluster_ising(L: int, g0: float, g1: float, g2: float, *, boundary: str = "open") -> ModelTerms:
    """
    H = -g0 sum Z_i - g1 sum X_i X_{i+1} - g2 sum X_i Z_{i+1} X_{i+2}.

    Open boundaries keep the bulk sums (L-1 XX terms, L-2 XZX terms);
    periodic boundaries wrap both sums around the ring.
    """
    L = int(L)
    if L < 3:
        raise InvalidSizeError(f"cluster_ising needs L >= 3 (got {L}).", details={"L": L})
    g0, g1, g2 = _finite("g0", g0), _finite("g1", g1), _finite("g2", g2)
    lat = chain(L, boundary)
    periodic = lat.boundary == "periodic"

    terms: List[PauliString] = []
    for i in range(L):
        _add(terms, -g0, (i, "z"))
    for i in range(L if periodic else L - 1):
        _add(terms, -g1, (i, "x"), ((i + 1) % L, "x"))
    for i in range(L if periodic else L - 2):
        _add(terms, -g2, (i, "x"), ((i + 1) % L, "z"), ((i + 2) % L, "x"))

    return ModelTerms(
        n_sites=L,
        terms=tuple(terms),
        name="cluster_ising",
        params={"L": L, "g0": g0, "g1": g1, "g2": g2, "boundary": lat.boundary},
        pinning=(PauliString(-1.0, ((0, "x"),)),),
        lattice=lat,
    )


# ---------------------------------------------------------------------------
# Bond-alternating XXZ chain
# ---------------------------------------------------------------------------

def bond_coefficient(i: int, delta: float) -> float:
    """
    Strength of bond (i, i+1) for 0-based i.

    Parity follows the 1-based site position, so the first bond carries
    1 - delta. Flipping this convention only swaps delta for -delta.
    """
    return 1.0 + (-1.0) ** (i + 1) * delta


def xxz_alternating(L: int, delta: float, Delta: float, *, boundary: str = "open") -> ModelTerms:
    """H = sum_i [1 + (-1)^i delta] (X X + Y Y + Delta Z Z) with 1-based parity."""
    delta, Delta = _finite("delta", delta), _finite("Delta", Delta)
    lat = chain(L, boundary)
    L = lat.n_sites

    flags = ()
    if abs(delta) > 1.0:
        flags = ("negative_bond_strength",)
        log.warning("XXZ_NEGATIVE_BONDS delta=%g", delta)

    terms: List[PauliString] = []
    for b in lat.bonds:
        j = bond_coefficient(0 if b.parity == "even" else 1, delta)
        _add(terms, j, (b.i, "x"), (b.j, "x"))
        _add(terms, j, (b.i, "y"), (b.j, "y"))
        _add(terms, j * Delta, (b.i, "z"), (b.j, "z"))

    # Staggered selector for the Neel ordered phase
    pinning = tuple(PauliString(-((-1.0) ** i), ((i, "z"),)) for i in range(L))

    return ModelTerms(
        n_sites=L,
        terms=tuple(terms),
        name="xxz_alternating",
        params={"L": L, "delta": delta, "Delta": Delta, "boundary": lat.boundary},
        pinning=pinning,
        lattice=lat,
        flags=flags,
    )


# ---------------------------------------------------------------------------
# 2D transverse-field Ising
# ---------------------------------------------------------------------------

def tfim_2d(lattice: Lattice, h: float) -> ModelTerms:
    _require_kind(lattice, "square", "tfim_2d")
    h = _finite("h", h)
    terms: List[PauliString] = []
    for b in lattice.bonds:
        _add(terms, -1.0, (b.i, "z"), (b.j, "z"))
    for i in range(lattice.n_sites):
        _add(terms, -h, (i, "x"))
    Ly, Lx = lattice.shape
    return ModelTerms(
        n_sites=lattice.n_sites,
        terms=tuple(terms),
        name="tfim_2d",
        params={"Lx": Lx, "Ly": Ly, "h": h, "boundary": lattice.boundary},
        pinning=(PauliString(-1.0, ((0, "z"),)),),
        lattice=lattice,
    )


# ---------------------------------------------------------------------------
# Kitaev honeycomb
# ---------------------------------------------------------------------------

def kitaev(lattice: Lattice, Jx: float, Jy: float, Jz: float) -> ModelTerms:
    """H = -sum_alpha J_alpha sum_<ij>_alpha S^alpha_i S^alpha_j; no pinning field (no local order)."""
    _require_kind(lattice, "honeycomb", "kitaev")
    J = {"x": _finite("Jx", Jx), "y": _finite("Jy", Jy), "z": _finite("Jz", Jz)}
    terms: List[PauliString] = []
    for b in lattice.bonds:
        _add(terms, -J[b.kind], (b.i, b.kind), (b.j, b.kind))
    W, L = lattice.shape
    return ModelTerms(
        n_sites=lattice.n_sites,
        terms=tuple(terms),
        name="kitaev",
        params={"L": L, "W": W, "Jx": J["x"], "Jy": J["y"], "Jz": J["z"], "boundary": lattice.boundary},
        lattice=lattice,
    )
