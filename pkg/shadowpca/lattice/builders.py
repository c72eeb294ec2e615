# shadowpca/lattice/builders.py
from __future__ import annotations

from typing import List, Tuple

from shadowpca.core.errors import InvalidSizeError, LatticeError
from .lattice import Bond, Lattice, BOUNDARIES


def _check_boundary(boundary: str) -> str:
    b = str(boundary).lower()
    if b not in BOUNDARIES:
        raise LatticeError(
            f"boundary must be 'open' or 'periodic' (got {boundary!r})",
            details={"boundary": boundary},
        )
    return b


def _parity(i: int) -> str:
    return "even" if i % 2 == 0 else "odd"


# ---------------------------------------------------------------------------
# Chain
# ---------------------------------------------------------------------------

def chain(L: int, boundary: str = "open") -> Lattice:
    """
    Open or periodic chain of generic bonds. Bond (i, i+1) carries the parity
    of its first site in chain order; the periodic wrap bond is (L-1, 0) and
    takes the parity of L-1, so alternation survives the wrap for even L.

    A periodic chain needs L >= 3: at L = 2 the wrap bond is the open bond.
    """
    boundary = _check_boundary(boundary)
    L = int(L)
    if L < 2:
        raise InvalidSizeError(f"chain needs L >= 2 (got {L}).", details={"L": L})
    if boundary == "periodic" and L < 3:
        raise InvalidSizeError(
            f"periodic chain needs L >= 3 (got {L}).",
            hint="Use boundary 'open' for two sites.",
            details={"L": L, "boundary": boundary},
        )

    bonds = [Bond(i, i + 1, parity=_parity(i)) for i in range(L - 1)]
    if boundary == "periodic":
        bonds.append(Bond(L - 1, 0, parity=_parity(L - 1)))

    return Lattice(
        n_sites=L,
        kind="chain",
        bonds=tuple(bonds),
        boundary=boundary,
        coords=tuple((i,) for i in range(L)),
        indexing="linear",
        shape=(L,),
    )


# ---------------------------------------------------------------------------
# Square
# ---------------------------------------------------------------------------

def snake_index(r: int, c: int, Lx: int) -> int:
    """Boustrophedon index: even rows run left to right, odd rows right to left."""
    return r * Lx + (c if r % 2 == 0 else Lx - 1 - c)


def snake_coords(index: int, Lx: int) -> Tuple[int, int]:
    r, off = divmod(int(index), Lx)
    return r, (off if r % 2 == 0 else Lx - 1 - off)


def square(Lx: int, Ly: int, boundary: str = "open", *, indexing: str = "snake") -> Lattice:
    """
    Lx columns by Ly rows with nearest-neighbour generic bonds.

    indexing="snake" (default) flattens rows serpentine-wise starting at the
    top-left corner; indexing="row-major" is available for comparison. Spectra
    do not depend on the choice, only rendered covariance layouts do.
    Periodic wraps are added only along dimensions of length >= 3; at length 2
    the wrap would repeat the open bond.
    """
    boundary = _check_boundary(boundary)
    Lx, Ly = int(Lx), int(Ly)
    if Lx < 2 or Ly < 2:
        raise InvalidSizeError(
            f"square needs Lx, Ly >= 2 (got {Lx}x{Ly}).",
            details={"Lx": Lx, "Ly": Ly},
        )
    if indexing not in ("snake", "row-major"):
        raise LatticeError(f"indexing must be 'snake' or 'row-major' (got {indexing!r})")

    def idx(r: int, c: int) -> int:
        return snake_index(r, c, Lx) if indexing == "snake" else r * Lx + c

    bonds: List[Bond] = []
    for r in range(Ly):
        for c in range(Lx):
            if c + 1 < Lx:
                bonds.append(Bond(idx(r, c), idx(r, c + 1)))
            elif boundary == "periodic" and Lx > 2:
                bonds.append(Bond(idx(r, c), idx(r, 0)))
            if r + 1 < Ly:
                bonds.append(Bond(idx(r, c), idx(r + 1, c)))
            elif boundary == "periodic" and Ly > 2:
                bonds.append(Bond(idx(r, c), idx(0, c)))

    coords = [None] * (Lx * Ly)
    for r in range(Ly):
        for c in range(Lx):
            coords[idx(r, c)] = (r, c)

    return Lattice(
        n_sites=Lx * Ly,
        kind="square",
        bonds=tuple(bonds),
        boundary=boundary,
        coords=tuple(coords),
        indexing=indexing,
        shape=(Ly, Lx),
    )


# ---------------------------------------------------------------------------
# Honeycomb
# ---------------------------------------------------------------------------

def honeycomb(L: int, W: int, boundary: str = "periodic") -> Lattice:
    """
    Brick-wall honeycomb with L unit-cell columns and W unit-cell rows.

    Convention:
      - cell (r, c) holds A = 2*(r*L + c) and B = A + 1 (row-major over cells)
      - z bond: A(r, c) - B(r, c)
      - x bond: B(r, c) - A(r, c+1)
      - y bond: B(r, c) - A(r+1, c)
    Periodic boundaries wrap x bonds along rows and y bonds along columns.
    Every site then touches exactly one bond of each type.
    """
    boundary = _check_boundary(boundary)
    L, W = int(L), int(W)
    if L < 1 or W < 1:
        raise InvalidSizeError(
            f"honeycomb needs L, W >= 1 (got {L}x{W}).",
            details={"L": L, "W": W},
        )

    def a_site(r: int, c: int) -> int:
        return 2 * (r * L + c)

    bonds: List[Bond] = []
    for r in range(W):
        for c in range(L):
            a = a_site(r, c)
            b = a + 1
            bonds.append(Bond(a, b, "z"))
            if c + 1 < L:
                bonds.append(Bond(b, a_site(r, c + 1), "x"))
            elif boundary == "periodic":
                bonds.append(Bond(b, a_site(r, 0), "x"))
            if r + 1 < W:
                bonds.append(Bond(b, a_site(r + 1, c), "y"))
            elif boundary == "periodic":
                bonds.append(Bond(b, a_site(0, c), "y"))

    coords = []
    for r in range(W):
        for c in range(L):
            coords.append((r, c, 0))
            coords.append((r, c, 1))

    return Lattice(
        n_sites=2 * L * W,
        kind="honeycomb",
        bonds=tuple(bonds),
        boundary=boundary,
        coords=tuple(coords),
        indexing="cell-row-major",
        shape=(W, L),
    )
