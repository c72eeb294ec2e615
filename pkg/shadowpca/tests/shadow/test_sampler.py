from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from shadowpca.core.errors import DimensionMismatchError, EmptyDatasetError, SamplingError, SizeCapError
from shadowpca.groundstate import StateVector, ground_state
from shadowpca.model import tfim_1d
from shadowpca.shadow import ROTATIONS, outcome_probabilities, sample_batch, sample_shot, shot_rng


def test_rotation_rows_are_orthonormal_eigenbras() -> None:
    for a in range(3):
        np.testing.assert_allclose(ROTATIONS[a] @ ROTATIONS[a].conj().T, np.eye(2), atol=1e-15)


def test_z_measurement_of_basis_state_is_deterministic() -> None:
    s = StateVector.basis("01")
    cfg = sample_shot(s, shot_rng(0, 0), forced_axes="zz")
    assert cfg.axes == "zz"
    assert cfg.signs == (1, -1)


def test_x_measurement_of_plus_state_is_deterministic() -> None:
    plus = StateVector.from_amplitudes(np.ones(8))
    for k in range(20):
        assert sample_shot(plus, shot_rng(3, k), forced_axes="xxx").signs == (1, 1, 1)


def test_forced_axes_are_validated() -> None:
    s = StateVector.basis("01")
    with pytest.raises(DimensionMismatchError, match="forced_axes needs 2"):
        sample_shot(s, shot_rng(0, 0), forced_axes="z")
    with pytest.raises(SamplingError, match="Unknown measurement axis"):
        sample_shot(s, shot_rng(0, 0), forced_axes="zq")


def test_y_measurement_of_plus_i_state() -> None:
    plus_i = StateVector.from_amplitudes([1.0, 1j])
    for k in range(20):
        assert sample_shot(plus_i, shot_rng(4, k), forced_axes="y").signs == (1,)


def test_bell_pair_outcomes_are_correlated() -> None:
    bell = StateVector.from_amplitudes([1.0, 0.0, 0.0, 1.0])
    for k in range(50):
        s = sample_shot(bell, shot_rng(1, k), forced_axes="zz").signs
        assert s[0] == s[1]
        s = sample_shot(bell, shot_rng(2, k), forced_axes="xx").signs
        assert s[0] == s[1]


def test_forced_axes_consume_the_same_stream() -> None:
    s = StateVector.from_amplitudes(np.arange(1, 9, dtype=float))
    free = sample_shot(s, shot_rng(11, 5))
    forced = sample_shot(s, shot_rng(11, 5), forced_axes=free.axes)
    assert forced == free


def test_shot_streams_depend_only_on_seed_and_index() -> None:
    a = shot_rng(7, 3).random(4)
    b = shot_rng(7, 3).random(4)
    c = shot_rng(7, 4).random(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_batch_is_reproducible_and_prefix_stable() -> None:
    s = ground_state(tfim_1d(4, 1.0)).state
    a = sample_batch(s, 200, seed=99)
    b = sample_batch(s, 200, seed=99)
    c = sample_batch(s, 50, seed=99)
    assert a.same_shots(b)
    assert np.array_equal(a.axes[:50], c.axes)
    assert np.array_equal(a.signs[:50], c.signs)
    assert not a.same_shots(sample_batch(s, 200, seed=100))


def test_zero_shots_rejected() -> None:
    with pytest.raises(EmptyDatasetError):
        sample_batch(StateVector.basis("0"), 0, seed=0)


def test_outcome_probabilities_sum_to_one_and_cap() -> None:
    s = ground_state(tfim_1d(3, 1.0)).state
    probs = outcome_probabilities(s)
    assert len(probs) == 6 ** 3
    assert sum(probs.values()) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(SizeCapError):
        outcome_probabilities(StateVector.basis("0" * 7))


@pytest.mark.integration
def test_sampled_distribution_matches_born_rule() -> None:
    s = ground_state(tfim_1d(3, 1.0)).state
    exact = outcome_probabilities(s)
    n = 100_000
    ds = sample_batch(s, n, seed=2024)
    counts = Counter(f"{cfg.axes}:{cfg.sign_string}" for cfg in ds)
    assert set(counts) <= set(exact)
    tv = 0.5 * sum(abs(counts.get(key, 0) / n - p) for key, p in exact.items())
    # 216 outcomes put the expected sampling TV near 0.015 at this N
    assert tv < 0.025
