# shadowpca/model/__init__.py
from .pauli import AXES, AXIS_INDEX, PAULI_MATRICES, PauliOperator, PauliString, apply_single, apply_string
from .terms import ModelTerms, apply
from .hamiltonians import bond_coefficient, cluster_ising, kitaev, tfim_1d, tfim_2d, xxz_alternating
from .catalog import BUILDERS, ModelCatalog, ModelEntry, ModelParamResolver, load_catalog

__all__ = [
    "AXES",
    "AXIS_INDEX",
    "PAULI_MATRICES",
    "PauliOperator",
    "PauliString",
    "apply_single",
    "apply_string",
    "ModelTerms",
    "apply",
    "bond_coefficient",
    "cluster_ising",
    "kitaev",
    "tfim_1d",
    "tfim_2d",
    "xxz_alternating",
    "BUILDERS",
    "ModelCatalog",
    "ModelEntry",
    "ModelParamResolver",
    "load_catalog",
]
