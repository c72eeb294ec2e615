# shadowpca/shadow/dataset.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Tuple

import numpy as np

from shadowpca.core.errors import DimensionMismatchError, EmptyDatasetError
from shadowpca.model.pauli import AXES, AXIS_INDEX


@dataclass(frozen=True)
class SpinConfiguration:
    """One shot: the measured axis and the +/-1 outcome on every site."""

    axes: str
    signs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.axes) != len(self.signs):
            raise DimensionMismatchError(
                f"axes ({len(self.axes)}) and signs ({len(self.signs)}) differ in length."
            )
        if any(a not in AXIS_INDEX for a in self.axes):
            raise ValueError(f"axes must only contain x, y, z (got {self.axes!r})")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1/-1 (got {self.signs!r})")

    @property
    def L(self) -> int:
        return len(self.axes)

    @property
    def outcomes(self) -> List[Tuple[str, int]]:
        return list(zip(self.axes, self.signs))

    @property
    def sign_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def __str__(self) -> str:
        return " ".join(f"{'+' if s > 0 else '-'}{a.upper()}" for a, s in self.outcomes)


@dataclass(frozen=True)
class ShotDataset:
    """
    N shots stored column-wise.

    axes[k, i]  : 0/1/2 for x/y/z on site i of shot k (uint8)
    signs[k, i] : +1/-1 (int8)
    """

    axes: np.ndarray
    signs: np.ndarray
    seed: int
    source: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        axes = np.ascontiguousarray(self.axes, dtype=np.uint8)
        signs = np.ascontiguousarray(self.signs, dtype=np.int8)
        if axes.ndim != 2 or axes.shape != signs.shape:
            raise DimensionMismatchError(
                f"axes {axes.shape} and signs {signs.shape} must be equal 2-D arrays."
            )
        if axes.shape[0] == 0:
            raise EmptyDatasetError("Shot dataset has no shots.")
        if np.any(axes > 2):
            raise ValueError("axes entries must be 0, 1 or 2")
        if not np.all(np.abs(signs) == 1):
            raise ValueError("signs entries must be +1 or -1")
        axes.setflags(write=False)
        signs.setflags(write=False)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "seed", int(self.seed))

    @classmethod
    def from_configurations(
        cls, configs: List[SpinConfiguration], seed: int, source: Dict[str, Any] | None = None
    ) -> "ShotDataset":
        if not configs:
            raise EmptyDatasetError("Shot dataset has no shots.")
        axes = np.array([[AXIS_INDEX[a] for a in c.axes] for c in configs], dtype=np.uint8)
        signs = np.array([c.signs for c in configs], dtype=np.int8)
        return cls(axes, signs, seed, dict(source or {}))

    @property
    def n_shots(self) -> int:
        return int(self.axes.shape[0])

    @property
    def L(self) -> int:
        return int(self.axes.shape[1])

    def __len__(self) -> int:
        return self.n_shots

    def __getitem__(self, k: int) -> SpinConfiguration:
        return SpinConfiguration(
            "".join(AXES[a] for a in self.axes[k]),
            tuple(int(s) for s in self.signs[k]),
        )

    def __iter__(self) -> Iterator[SpinConfiguration]:
        for k in range(self.n_shots):
            yield self[k]

    @property
    def configurations(self) -> List[SpinConfiguration]:
        return list(self)

    def same_shots(self, other: "ShotDataset") -> bool:
        return np.array_equal(self.axes, other.axes) and np.array_equal(self.signs, other.signs)
