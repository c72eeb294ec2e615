from __future__ import annotations

import json

import pytest

from shadowpca.core.errors import InvalidSizeError, LatticeError
from shadowpca.lattice import Bond, Lattice, chain, honeycomb, snake_coords, snake_index, square


def _pairs(lat: Lattice) -> set:
    return {b.pair for b in lat.bonds}


# ---------------- chain ----------------

def test_chain_open_and_periodic_bonds() -> None:
    assert _pairs(chain(3, "open")) == {(0, 1), (1, 2)}
    assert _pairs(chain(3, "periodic")) == {(0, 1), (1, 2), (0, 2)}


def test_chain_bonds_are_generic_with_first_site_parity() -> None:
    lat = chain(4, "periodic")
    assert {b.kind for b in lat.bonds} == {"generic"}
    parity = {(b.i, b.j): b.parity for b in lat.bonds}
    assert parity == {(0, 1): "even", (1, 2): "odd", (2, 3): "even", (3, 0): "odd"}
    assert lat.as_dict()["bonds"][3] == {"i": 3, "j": 0, "type": "generic", "parity": "odd"}


def test_two_site_periodic_chain_raises() -> None:
    assert len(chain(2, "open").bonds) == 1
    with pytest.raises(InvalidSizeError, match="periodic chain needs L >= 3"):
        chain(2, "periodic")


def test_long_open_chain_bond_count() -> None:
    assert len(chain(200, "open").bonds) == 199


def test_chain_too_short_raises() -> None:
    with pytest.raises(InvalidSizeError):
        chain(1)


def test_chain_rejects_unknown_boundary() -> None:
    with pytest.raises(LatticeError, match="boundary"):
        chain(4, "twisted")


# ---------------- square ----------------

def test_square_counts() -> None:
    lat = square(4, 4, "open")
    assert lat.n_sites == 16
    assert len(lat.bonds) == 24
    assert square(10, 10).n_sites == 100


@pytest.mark.parametrize("Lx,Ly", [(2, 3), (3, 2), (4, 5)])
def test_open_square_bond_formula(Lx: int, Ly: int) -> None:
    assert len(square(Lx, Ly).bonds) == 2 * Lx * Ly - Lx - Ly


def test_snake_index_example() -> None:
    assert snake_index(1, 0, 2) == 3
    lat = square(2, 2)
    assert lat.index_of(1, 0) == 3


def test_snake_is_a_bijection() -> None:
    Lx, Ly = 4, 3
    seen = set()
    for r in range(Ly):
        for c in range(Lx):
            k = snake_index(r, c, Lx)
            assert snake_coords(k, Lx) == (r, c)
            seen.add(k)
    assert seen == set(range(Lx * Ly))


def test_row_major_indexing_keeps_bond_count() -> None:
    a = square(3, 3, indexing="snake")
    b = square(3, 3, indexing="row-major")
    assert len(a.bonds) == len(b.bonds)
    assert b.index_of(1, 0) == 3
    assert a.index_of(1, 0) == 5


def test_periodic_square_has_wrap_bonds() -> None:
    assert len(square(3, 3, "periodic").bonds) == 18


def test_square_too_small_raises() -> None:
    with pytest.raises(InvalidSizeError):
        square(1, 4)


# ---------------- honeycomb ----------------

def test_single_cell_open_honeycomb() -> None:
    lat = honeycomb(1, 1, "open")
    assert lat.n_sites == 2
    assert [(b.i, b.j, b.kind) for b in lat.bonds] == [(0, 1, "z")]


def test_periodic_2x2_honeycomb_has_four_bonds_of_each_type() -> None:
    lat = honeycomb(2, 2, "periodic")
    assert lat.n_sites == 8
    assert len(lat.bonds) == 12
    for kind in ("x", "y", "z"):
        assert len(lat.bonds_of_type(kind)) == 4


@pytest.mark.parametrize("L,W", [(1, 2), (2, 3), (3, 3)])
def test_open_honeycomb_bond_formula(L: int, W: int) -> None:
    assert len(honeycomb(L, W, "open").bonds) == 3 * L * W - L - W


def test_every_honeycomb_site_touches_each_type_once_when_periodic() -> None:
    lat = honeycomb(3, 2, "periodic")
    for site in range(lat.n_sites):
        kinds = sorted(b.kind for b in lat.bonds if site in (b.i, b.j))
        assert kinds == ["x", "y", "z"]


def test_large_honeycomb_constructs() -> None:
    assert honeycomb(8, 8).n_sites == 128


def test_honeycomb_zero_size_raises() -> None:
    with pytest.raises(InvalidSizeError):
        honeycomb(0, 2)


# ---------------- Lattice invariants ----------------

def test_lattice_rejects_bad_bonds() -> None:
    with pytest.raises(LatticeError, match="outside"):
        Lattice(n_sites=2, kind="chain", bonds=(Bond(0, 2),), boundary="open")
    with pytest.raises(LatticeError, match="Self-bond"):
        Lattice(n_sites=2, kind="chain", bonds=(Bond(1, 1),), boundary="open")
    with pytest.raises(LatticeError, match="Duplicate"):
        Lattice(n_sites=2, kind="chain", bonds=(Bond(0, 1), Bond(1, 0)), boundary="open")


def test_lattice_rejects_double_bond_type_on_honeycomb_site() -> None:
    with pytest.raises(LatticeError, match="more than one"):
        Lattice(n_sites=3, kind="honeycomb", bonds=(Bond(0, 1, "z"), Bond(1, 2, "z")), boundary="open")


def test_neighbors_and_json_export() -> None:
    lat = chain(4, "open")
    assert lat.neighbors(1) == [0, 2]
    data = json.loads(lat.to_json())
    assert data["kind"] == "chain"
    assert data["n_sites"] == 4
    assert len(data["bonds"]) == 3
    assert data["sites"][2] == {"index": 2, "coord": [2]}
