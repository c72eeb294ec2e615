# shadowpca/groundstate/state.py
from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from shadowpca.core.errors import DimensionMismatchError, ShadowPcaError

NORM_TOL = 1e-10

# Binary dump: magic, uint32 n_sites, then 2^n complex128 (interleaved re/im float64), little-endian
DUMP_MAGIC = b"SPSV"
_HEADER = struct.Struct("<4sI")


@dataclass(frozen=True)
class StateVector:
    """Normalized, read-only amplitude vector; site 0 is the most significant bit."""

    amplitudes: np.ndarray
    n_sites: int

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != (1 << int(self.n_sites)):
            raise DimensionMismatchError(
                f"State of length {amps.shape[0]} does not match 2^{self.n_sites}.",
                details={"n_sites": int(self.n_sites), "length": int(amps.shape[0])},
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ShadowPcaError(f"State is not normalized (norm={norm:.12g}).")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "n_sites", int(self.n_sites))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_amplitudes(cls, amplitudes, n_sites: int | None = None) -> "StateVector":
        """Normalize and wrap; n_sites is inferred from the length when omitted."""
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if n_sites is None:
            n_sites = int(amps.shape[0]).bit_length() - 1
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ShadowPcaError("Cannot normalize the zero vector.")
        return cls(amps / norm, n_sites)

    @classmethod
    def basis(cls, bits: str) -> "StateVector":
        """Computational basis state from a string like "0110" (0 = up)."""
        n = len(bits)
        amps = np.zeros(1 << n, dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(amps, n)

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n_sites)

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    # ------------------------------------------------------------------
    # Binary dump
    # ------------------------------------------------------------------
    def dump(self, path: str | Path) -> Path:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        with open(p, "wb") as f:
            f.write(_HEADER.pack(DUMP_MAGIC, self.n_sites))
            f.write(self.amplitudes.astype("<c16").tobytes())
        return p

    @classmethod
    def load(cls, path: str | Path) -> "StateVector":
        p = Path(path)
        raw = p.read_bytes()
        if len(raw) < _HEADER.size:
            raise ShadowPcaError(f"State dump {p} is truncated.")
        magic, n_sites = _HEADER.unpack_from(raw, 0)
        if magic != DUMP_MAGIC:
            raise ShadowPcaError(f"{p} is not a state dump (magic={magic!r}).")
        body = raw[_HEADER.size:]
        expected = (1 << n_sites) * 16
        if len(body) != expected:
            raise ShadowPcaError(
                f"State dump {p} has {len(body)} data bytes, expected {expected}.",
                details={"n_sites": n_sites},
            )
        return cls(np.frombuffer(body, dtype="<c16").astype(complex), n_sites)
