# shadowpca/core/limits.py
from __future__ import annotations

from shadowpca.core.errors import SizeCapError

#: Largest state vector handled without an explicit override (2**20 amplitudes)
MAX_STATE_SITES = 20

#: Largest system for dense 2^L x 2^L shadow reconstruction
MAX_DENSE_SHADOW_SITES = 6

#: Largest system converted to a dense Hamiltonian matrix
MAX_DENSE_MATRIX_SITES = 14


def check_state_size(n_sites: int, *, allow_large: bool = False) -> None:
    if n_sites > MAX_STATE_SITES and not allow_large:
        raise SizeCapError(
            f"{n_sites} sites exceed the state-vector cap of {MAX_STATE_SITES}.",
            hint="Pass allow_large=True (CLI: --allow-large) to override.",
            details={"n_sites": int(n_sites), "cap": MAX_STATE_SITES},
        )
