# shadowpca/shadow/sampler.py
from __future__ import annotations

import itertools
import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np

from shadowpca.core.errors import DimensionMismatchError, EmptyDatasetError, SamplingError, SizeCapError
from shadowpca.core.limits import MAX_DENSE_SHADOW_SITES
from shadowpca.groundstate import StateVector
from shadowpca.model.pauli import AXES, AXIS_INDEX
from .dataset import ShotDataset, SpinConfiguration

log = logging.getLogger(__name__)

_S = 1.0 / np.sqrt(2.0)

# Rows are <+| and <-| of each measurement axis, so ROTATIONS[a] @ v gives the
# amplitudes of outcomes +1 and -1.
ROTATIONS = np.array(
    [
        [[_S, _S], [_S, -_S]],            # x: |+>, |->
        [[_S, -1j * _S], [_S, 1j * _S]],  # y: |+i>, |-i>
        [[1, 0], [0, 1]],                 # z: |up>, |down>
    ],
    dtype=complex,
)


def shot_rng(seed: int, k: int) -> np.random.Generator:
    """
    Counter-based stream for shot k: Philox keyed by SeedSequence(seed, spawn_key=(k,)).

    The output depends only on (seed, k), never on scheduling.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=int(seed), spawn_key=(int(k),))))


def sample_shot(
    state: StateVector,
    rng: np.random.Generator,
    *,
    forced_axes: Optional[Sequence[str]] = None,
) -> SpinConfiguration:
    """
    One randomized single-site Pauli measurement of every site.

    Axes are drawn first (uniform over x, y, z), then sites are measured in
    order 0..L-1, each outcome drawn from its Born probability conditioned on
    the earlier collapses. `forced_axes` overrides the axis draw and exists
    for tests; the random stream is consumed identically either way.
    """
    L = state.n_sites
    axis_idx = rng.integers(0, 3, size=L)
    uniforms = rng.random(L)
    if forced_axes is not None:
        if len(forced_axes) != L:
            raise DimensionMismatchError(f"forced_axes needs {L} entries (got {len(forced_axes)}).")
        try:
            axis_idx = np.array([AXIS_INDEX[a] for a in forced_axes])
        except KeyError as e:
            raise SamplingError(f"Unknown measurement axis {e.args[0]!r}.", hint="Use x, y or z.") from None

    psi = state.amplitudes
    signs = []
    for i in range(L):
        amps = ROTATIONS[axis_idx[i]] @ psi.reshape(2, -1)
        w_plus = float(np.vdot(amps[0], amps[0]).real)
        w_minus = float(np.vdot(amps[1], amps[1]).real)
        total = w_plus + w_minus
        if total <= 0.0:
            raise SamplingError(f"Working vector vanished at site {i}.", details={"site": i})
        outcome = 0 if uniforms[i] < w_plus / total else 1
        weight = w_plus if outcome == 0 else w_minus
        if weight <= 0.0:
            raise SamplingError(f"Zero-probability outcome drawn at site {i}.", details={"site": i})
        psi = amps[outcome] / np.sqrt(weight)
        signs.append(1 if outcome == 0 else -1)

    return SpinConfiguration("".join(AXES[a] for a in axis_idx), tuple(signs))


def sample_batch(
    state: StateVector,
    n_shots: int,
    seed: int,
    *,
    source: Optional[Dict[str, Any]] = None,
) -> ShotDataset:
    """N independent shots; shot k draws from shot_rng(seed, k)."""
    n_shots = int(n_shots)
    if n_shots < 1:
        raise EmptyDatasetError(f"Shot count must be >= 1 (got {n_shots}).")

    L = state.n_sites
    axes = np.empty((n_shots, L), dtype=np.uint8)
    signs = np.empty((n_shots, L), dtype=np.int8)
    for k in range(n_shots):
        cfg = sample_shot(state, shot_rng(seed, k))
        axes[k] = [AXIS_INDEX[a] for a in cfg.axes]
        signs[k] = cfg.signs

    log.debug("SHOTS_SAMPLED L=%d N=%d seed=%d", L, n_shots, seed)
    return ShotDataset(axes, signs, seed, dict(source or {}))


def outcome_probabilities(state: StateVector) -> Dict[str, float]:
    """
    Exact joint distribution of (axes, signs) under uniform random axes.

    Keys look like "xz:+-". Enumerates 6^L outcomes, so L is capped.
    """
    L = state.n_sites
    if L > MAX_DENSE_SHADOW_SITES:
        raise SizeCapError(
            f"Outcome enumeration needs L <= {MAX_DENSE_SHADOW_SITES} (got {L}).",
            details={"L": L, "cap": MAX_DENSE_SHADOW_SITES},
        )
    psi = state.tensor()
    out: Dict[str, float] = {}
    for axes in itertools.product(range(3), repeat=L):
        t = psi
        for i, a in enumerate(axes):
            t = np.moveaxis(np.tensordot(ROTATIONS[a], t, axes=([1], [i])), 0, i)
        probs = np.abs(t.reshape(-1)) ** 2 / (3 ** L)
        axis_str = "".join(AXES[a] for a in axes)
        for idx, p in enumerate(probs):
            bits = format(idx, f"0{L}b")
            out[f"{axis_str}:{bits.replace('0', '+').replace('1', '-')}"] = float(p)
    return out
