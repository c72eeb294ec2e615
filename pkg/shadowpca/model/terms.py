# shadowpca/model/terms.py
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from shadowpca.core.errors import DimensionMismatchError, InvalidModelError, InvalidSizeError
from shadowpca.core.limits import MAX_DENSE_MATRIX_SITES, check_state_size
from shadowpca.lattice import Lattice
from .pauli import PauliOperator, PauliString


@dataclass(frozen=True)
class ModelTerms:
    """
    Hamiltonian as a list of real-weighted Pauli strings.

    `pinning` holds unit-strength symmetry-breaking strings. They are never
    part of `terms`; the ground-state solver scales them by epsilon and adds
    them only when its pinning policy says so.
    """

    n_sites: int
    terms: Tuple[PauliString, ...]
    name: str
    params: Dict[str, Any] = field(default_factory=dict)
    pinning: Tuple[PauliString, ...] = ()
    lattice: Optional[Lattice] = field(default=None, compare=False)
    flags: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise InvalidSizeError(f"Model needs at least one site (got {self.n_sites}).")
        for ps in tuple(self.terms) + tuple(self.pinning):
            if not ps.factors:
                raise InvalidModelError(f"Identity term in model '{self.name}' is not allowed.")
            if ps.max_site >= self.n_sites:
                raise InvalidModelError(
                    f"Term {ps.label} touches site {ps.max_site} but '{self.name}' has {self.n_sites} sites.",
                    details={"term": ps.as_dict(), "n_sites": self.n_sites},
                )
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "pinning", tuple(self.pinning))

    # ------------------------------------------------------------------
    # Identity
    # ------------------------------------------------------------------
    @property
    def label(self) -> str:
        body = ",".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({body})"

    @property
    def dim(self) -> int:
        return 1 << self.n_sites

    # ------------------------------------------------------------------
    # Derived models
    # ------------------------------------------------------------------
    def with_extra_terms(self, extra: Sequence[PauliString], *, tag: str) -> "ModelTerms":
        return ModelTerms(
            n_sites=self.n_sites,
            terms=self.terms + tuple(extra),
            name=self.name,
            params=dict(self.params),
            pinning=self.pinning,
            lattice=self.lattice,
            flags=self.flags + (tag,),
        )

    def pinned(self, epsilon: float) -> "ModelTerms":
        if not self.pinning:
            raise InvalidModelError(f"Model '{self.name}' defines no pinning field.")
        return self.with_extra_terms([p.scaled(epsilon) for p in self.pinning], tag=f"pinned:{epsilon:g}")

    # ------------------------------------------------------------------
    # Numerics
    # ------------------------------------------------------------------
    def operator(self, *, allow_large: bool = False) -> PauliOperator:
        """Compiled operator (cached on first use)."""
        cached = self.__dict__.get("_operator")
        if cached is None:
            check_state_size(self.n_sites, allow_large=allow_large)
            cached = PauliOperator(self.n_sites, self.terms)
            object.__setattr__(self, "_operator", cached)
        return cached

    def to_dense(self) -> np.ndarray:
        if self.n_sites > MAX_DENSE_MATRIX_SITES:
            raise InvalidSizeError(
                f"Dense matrix refused for {self.n_sites} sites (limit {MAX_DENSE_MATRIX_SITES}).",
            )
        return self.operator().to_dense()

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------
    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "label": self.label,
            "n_sites": self.n_sites,
            "params": dict(self.params),
            "flags": list(self.flags),
            "lattice": self.lattice.as_dict() if self.lattice is not None else None,
            "terms": [t.as_dict() for t in self.terms],
            "pinning": [p.as_dict() for p in self.pinning],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return f"ModelTerms({self.label}, n_sites={self.n_sites}, terms={len(self.terms)})"


def apply(model: ModelTerms, psi: np.ndarray) -> np.ndarray:
    """H|psi> without materializing H."""
    v = np.asarray(psi)
    if v.ndim != 1 or v.shape[0] != model.dim:
        raise DimensionMismatchError(
            f"State of length {v.size} does not match 2^{model.n_sites} = {model.dim}.",
            details={"expected": model.dim, "got": int(v.size)},
        )
    return model.operator(allow_large=True).matvec(v)
