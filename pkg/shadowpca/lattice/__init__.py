# shadowpca/lattice/__init__.py
from .lattice import Bond, Lattice, BOND_TYPES, BOUNDARIES, LATTICE_KINDS
from .builders import chain, square, honeycomb, snake_index, snake_coords

__all__ = [
    "Bond",
    "Lattice",
    "BOND_TYPES",
    "BOUNDARIES",
    "LATTICE_KINDS",
    "chain",
    "square",
    "honeycomb",
    "snake_index",
    "snake_coords",
]
