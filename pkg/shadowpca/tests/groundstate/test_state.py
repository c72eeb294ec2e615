from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from shadowpca.core.errors import DimensionMismatchError, ShadowPcaError
from shadowpca.groundstate import DUMP_MAGIC, StateVector


def test_basis_state_sets_single_amplitude() -> None:
    s = StateVector.basis("0110")
    assert s.n_sites == 4
    assert s.dim == 16
    assert s.amplitudes[0b0110] == 1.0
    assert s.tensor()[0, 1, 1, 0] == 1.0


def test_from_amplitudes_normalizes_and_infers_size() -> None:
    s = StateVector.from_amplitudes([1.0, 1.0, 0.0, 0.0])
    assert s.n_sites == 2
    np.testing.assert_allclose(s.amplitudes, [2 ** -0.5, 2 ** -0.5, 0, 0])


def test_amplitudes_are_read_only() -> None:
    s = StateVector.basis("01")
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.0


def test_rejects_unnormalized_and_wrong_length() -> None:
    with pytest.raises(ShadowPcaError, match="normalized"):
        StateVector(np.array([1.0, 1.0]), 1)
    with pytest.raises(DimensionMismatchError):
        StateVector(np.array([1.0, 0.0, 0.0]), 2)
    with pytest.raises(ShadowPcaError):
        StateVector.from_amplitudes(np.zeros(4))


def test_overlap() -> None:
    a = StateVector.basis("00")
    b = StateVector.from_amplitudes([1.0, 1.0, 0.0, 0.0])
    assert a.overlap(b) == pytest.approx(2 ** -0.5)


def test_dump_and_load(tmp_path: Path) -> None:
    rng = np.random.default_rng(0)
    s = StateVector.from_amplitudes(rng.standard_normal(8) + 1j * rng.standard_normal(8))
    p = s.dump(tmp_path / "psi.bin")
    raw = p.read_bytes()
    assert raw[:4] == DUMP_MAGIC
    assert len(raw) == 8 + 8 * 16
    back = StateVector.load(p)
    assert back.n_sites == 3
    assert np.array_equal(back.amplitudes, s.amplitudes)


def test_load_rejects_foreign_and_truncated_files(tmp_path: Path) -> None:
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"NOPE\x01\x00\x00\x00" + b"\x00" * 32)
    with pytest.raises(ShadowPcaError, match="not a state dump"):
        StateVector.load(bad)

    s = StateVector.basis("0")
    p = s.dump(tmp_path / "short.bin")
    p.write_bytes(p.read_bytes()[:-4])
    with pytest.raises(ShadowPcaError, match="data bytes"):
        StateVector.load(p)
