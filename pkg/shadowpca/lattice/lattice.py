# shadowpca/lattice/lattice.py
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from shadowpca.core.errors import InvalidSizeError, LatticeError

BOND_TYPES = frozenset({"generic", "x", "y", "z", "even", "odd"})
BOND_PARITIES = frozenset({"even", "odd"})
BOUNDARIES = frozenset({"open", "periodic"})
LATTICE_KINDS = frozenset({"chain", "square", "honeycomb"})


@dataclass(frozen=True)
class Bond:
    """
    Undirected bond between sites i and j.

    `parity` is set on chain bonds only: the parity of the bond's first site
    in chain order, read by the bond-alternating XXZ builder.
    """

    i: int
    j: int
    kind: str = "generic"
    parity: Optional[str] = None

    @property
    def pair(self) -> Tuple[int, int]:
        return (min(self.i, self.j), max(self.i, self.j))

    def as_dict(self) -> dict:
        out = {"i": self.i, "j": self.j, "type": self.kind}
        if self.parity is not None:
            out["parity"] = self.parity
        return out


@dataclass(frozen=True)
class Lattice:
    """
    Immutable site/bond description of a lattice.

    `coords[k]` is the geometric label of linear site k:
      - chain:     (k,)
      - square:    (row, column)
      - honeycomb: (cell_row, cell_column, sublattice) with sublattice 0=A, 1=B

    The linear index is the order in which sites appear in encoded
    3L-dimensional vectors.
    """

    n_sites: int
    kind: str
    bonds: Tuple[Bond, ...]
    boundary: str
    coords: Tuple[Tuple[int, ...], ...] = ()
    indexing: str = "linear"
    shape: Tuple[int, ...] = ()
    _index: Dict[Tuple[int, ...], int] = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._validate()
        object.__setattr__(self, "_index", {c: k for k, c in enumerate(self.coords)})

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------
    def bonds_of_type(self, kind: str) -> List[Bond]:
        return [b for b in self.bonds if b.kind == kind]

    def index_of(self, *coord: int) -> int:
        try:
            return self._index[tuple(int(c) for c in coord)]
        except KeyError:
            raise KeyError(f"No site at {coord} in {self.kind} lattice") from None

    def coord_of(self, index: int) -> Tuple[int, ...]:
        return self.coords[int(index)]

    def neighbors(self, site: int) -> List[int]:
        out = []
        for b in self.bonds:
            if b.i == site:
                out.append(b.j)
            elif b.j == site:
                out.append(b.i)
        return sorted(out)

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------
    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n_sites": self.n_sites,
            "boundary": self.boundary,
            "indexing": self.indexing,
            "shape": list(self.shape),
            "sites": [{"index": k, "coord": list(c)} for k, c in enumerate(self.coords)],
            "bonds": [b.as_dict() for b in self.bonds],
        }

    def to_json(self, *, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------
    def _validate(self) -> None:
        if self.n_sites < 1:
            raise InvalidSizeError(f"Lattice needs at least one site (got {self.n_sites}).")
        if self.kind not in LATTICE_KINDS:
            raise LatticeError(f"Unknown lattice kind '{self.kind}'")
        if self.boundary not in BOUNDARIES:
            raise LatticeError(f"boundary must be 'open' or 'periodic' (got {self.boundary!r})")
        if self.coords and len(self.coords) != self.n_sites:
            raise LatticeError("coords must list exactly one label per site")

        seen = set()
        for b in self.bonds:
            if b.kind not in BOND_TYPES:
                raise LatticeError(f"Unknown bond type '{b.kind}'")
            if b.parity is not None and b.parity not in BOND_PARITIES:
                raise LatticeError(f"Unknown bond parity '{b.parity}'")
            if not (0 <= b.i < self.n_sites and 0 <= b.j < self.n_sites):
                raise LatticeError(f"Bond {b} has an endpoint outside [0, {self.n_sites})")
            if b.i == b.j:
                raise LatticeError(f"Self-bond on site {b.i}")
            key = (b.pair, b.kind)
            if key in seen:
                raise LatticeError(f"Duplicate bond {b.pair} of type '{b.kind}'")
            seen.add(key)

        if self.kind == "honeycomb":
            degree: Dict[Tuple[int, str], int] = {}
            for b in self.bonds:
                for s in (b.i, b.j):
                    degree[(s, b.kind)] = degree.get((s, b.kind), 0) + 1
            over = [k for k, v in degree.items() if v > 1]
            if over:
                site, kind = over[0]
                raise LatticeError(f"Site {site} touches more than one '{kind}' bond")

    def __repr__(self) -> str:
        return (
            f"Lattice(kind='{self.kind}', n_sites={self.n_sites}, "
            f"bonds={len(self.bonds)}, boundary='{self.boundary}')"
        )
