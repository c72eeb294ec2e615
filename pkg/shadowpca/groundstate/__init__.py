# shadowpca/groundstate/__init__.py
from .state import DUMP_MAGIC, StateVector
from .solver import PINNING_POLICIES, GroundStateReport, SolverOptions, ground_state, lanczos_lowest
from .entropy import entanglement_entropy, entropy_profile

__all__ = [
    "DUMP_MAGIC",
    "StateVector",
    "PINNING_POLICIES",
    "GroundStateReport",
    "SolverOptions",
    "ground_state",
    "lanczos_lowest",
    "entanglement_entropy",
    "entropy_profile",
]
