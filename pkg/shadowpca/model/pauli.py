# shadowpca/model/pauli.py
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from shadowpca.core.errors import DimensionMismatchError, InvalidModelError

AXES = ("x", "y", "z")
AXIS_INDEX = {a: k for k, a in enumerate(AXES)}

# Single-site Pauli matrices in the basis |0> = up (sigma^z = +1), |1> = down
PAULI_MATRICES: Dict[str, np.ndarray] = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_TOKEN = re.compile(r"^([xyzXYZ])(\d+)$")

FactorsLike = Union[Mapping[int, str], Iterable[Tuple[int, str]]]


@dataclass(frozen=True)
class PauliString:
    """
    Real coefficient times a tensor product of single-site Pauli operators.

    `factors` is stored as a tuple of (site, axis) pairs sorted by site.
    """

    coefficient: float
    factors: Tuple[Tuple[int, str], ...]

    def __post_init__(self) -> None:
        coef = float(self.coefficient)
        if not math.isfinite(coef):
            raise InvalidModelError(f"Pauli coefficient must be finite (got {self.coefficient!r}).")

        normalized = []
        for site, axis in self.factors:
            a = str(axis).lower()
            if a not in AXIS_INDEX:
                raise InvalidModelError(f"Unknown Pauli axis '{axis}' (use x, y or z).")
            if int(site) < 0:
                raise InvalidModelError(f"Negative site index {site}.")
            normalized.append((int(site), a))
        normalized.sort()

        sites = [s for s, _ in normalized]
        if len(sites) != len(set(sites)):
            raise InvalidModelError(f"Site repeated inside Pauli string {normalized}.")

        object.__setattr__(self, "coefficient", coef)
        object.__setattr__(self, "factors", tuple(normalized))

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------
    @classmethod
    def of(cls, coefficient: float, factors: FactorsLike) -> "PauliString":
        items = factors.items() if isinstance(factors, Mapping) else factors
        return cls(float(coefficient), tuple(items))

    @classmethod
    def parse(cls, text: str, coefficient: float = 1.0) -> "PauliString":
        """Parse tokens like "Z0 Z1" or "x3,z4,x5"."""
        tokens = [t for t in re.split(r"[\s,*]+", text.strip()) if t]
        if not tokens:
            raise InvalidModelError("Empty Pauli string.")
        pairs = []
        for tok in tokens:
            m = _TOKEN.match(tok)
            if not m:
                raise InvalidModelError(f"Cannot parse Pauli token '{tok}' (expected e.g. Z0).")
            pairs.append((int(m.group(2)), m.group(1).lower()))
        return cls(float(coefficient), tuple(pairs))

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------
    @property
    def sites(self) -> Tuple[int, ...]:
        return tuple(s for s, _ in self.factors)

    @property
    def max_site(self) -> int:
        return max(self.sites) if self.factors else -1

    def axis_at(self, site: int) -> str | None:
        for s, a in self.factors:
            if s == site:
                return a
        return None

    def scaled(self, factor: float) -> "PauliString":
        return PauliString(self.coefficient * float(factor), self.factors)

    @property
    def label(self) -> str:
        body = " ".join(f"{a.upper()}{s}" for s, a in self.factors) or "I"
        return f"{self.coefficient:+g} {body}"

    def as_dict(self) -> dict:
        return {
            "coefficient": self.coefficient,
            "factors": {str(s): a for s, a in self.factors},
        }

    def __repr__(self) -> str:
        return f"PauliString({self.label})"


# ---------------------------------------------------------------------------
# Single-site application on state tensors
# ---------------------------------------------------------------------------

def apply_single(psi: np.ndarray, n_sites: int, site: int, axis: str) -> np.ndarray:
    """sigma^axis on `site` applied to a flat state vector (site 0 = leading tensor axis)."""
    t = np.asarray(psi).reshape((2,) * n_sites)
    out = np.tensordot(PAULI_MATRICES[axis], t, axes=([1], [site]))
    return np.moveaxis(out, 0, site).reshape(-1)


def apply_string(psi: np.ndarray, n_sites: int, ps: PauliString) -> np.ndarray:
    out = np.asarray(psi, dtype=complex)
    for site, axis in ps.factors:
        out = apply_single(out, n_sites, site, axis)
    return ps.coefficient * out


# ---------------------------------------------------------------------------
# Compiled operator
# ---------------------------------------------------------------------------

class PauliOperator:
    """
    Matrix-free sum of Pauli strings.

    Terms are grouped by their bit-flip pattern: every Pauli string maps
    basis state |k> to phase(k) |k XOR flip>, so all strings sharing `flip`
    collapse into one weight vector. Applying the operator is then one
    elementwise product plus one axis flip per group.
    """

    def __init__(self, n_sites: int, terms: Sequence[PauliString]):
        self.n_sites = int(n_sites)
        self.dim = 1 << self.n_sites
        self._shape = (2,) * self.n_sites

        idx = np.arange(self.dim, dtype=np.int64)
        groups: Dict[int, np.ndarray] = {}
        axes_of: Dict[int, Tuple[int, ...]] = {}

        for ps in terms:
            if ps.max_site >= self.n_sites:
                raise InvalidModelError(
                    f"Term {ps.label} touches site {ps.max_site} but the model has {self.n_sites} sites."
                )
            flip = 0
            flip_axes: List[int] = []
            parity = np.zeros(self.dim, dtype=np.int64)
            n_y = 0
            for site, axis in ps.factors:
                shift = self.n_sites - 1 - site
                if axis in ("x", "y"):
                    flip |= 1 << shift
                    flip_axes.append(site)
                if axis in ("y", "z"):
                    parity ^= (idx >> shift) & 1
                if axis == "y":
                    n_y += 1
            # sigma^y|0> = i|1>, sigma^y|1> = -i|0>; sigma^z|b> = (-1)^b |b>
            weight = (ps.coefficient * (1j ** n_y)) * (1 - 2 * parity)
            if flip in groups:
                groups[flip] = groups[flip] + weight
            else:
                groups[flip] = weight.astype(complex)
                axes_of[flip] = tuple(flip_axes)

        self._groups: List[Tuple[int, Tuple[int, ...], np.ndarray]] = []
        real = True
        for flip in sorted(groups):
            w = groups[flip]
            if np.all(w.imag == 0.0):
                w = np.ascontiguousarray(w.real)
            else:
                real = False
            self._groups.append((flip, axes_of[flip], w))
        self.is_real = real

    @property
    def n_groups(self) -> int:
        return len(self._groups)

    def matvec(self, psi: np.ndarray) -> np.ndarray:
        v = np.asarray(psi)
        if v.ndim != 1 or v.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"State of length {v.shape} does not match operator dimension {self.dim}.",
                details={"expected": self.dim, "got": list(v.shape)},
            )
        dtype = np.result_type(v.dtype, float if self.is_real else complex)
        out = np.zeros(self.dim, dtype=dtype)
        for flip, axes, w in self._groups:
            prod = w * v
            if flip == 0:
                out += prod
            else:
                out += np.flip(prod.reshape(self._shape), axis=axes).reshape(-1)
        return out

    __call__ = matvec

    def to_dense(self) -> np.ndarray:
        idx = np.arange(self.dim, dtype=np.int64)
        m = np.zeros((self.dim, self.dim), dtype=float if self.is_real else complex)
        for flip, _axes, w in self._groups:
            m[idx ^ flip, idx] += w
        return m

    def expectation(self, psi: np.ndarray) -> float:
        v = np.asarray(psi)
        return float(np.vdot(v, self.matvec(v)).real)
