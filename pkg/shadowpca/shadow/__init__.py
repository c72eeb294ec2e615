# shadowpca/shadow/__init__.py
from .dataset import ShotDataset, SpinConfiguration
from .sampler import ROTATIONS, outcome_probabilities, sample_batch, sample_shot, shot_rng
from .estimators import estimate_observable, reconstruct_shadow
from .codec import read_ndjson, write_ndjson

__all__ = [
    "ShotDataset",
    "SpinConfiguration",
    "ROTATIONS",
    "outcome_probabilities",
    "sample_batch",
    "sample_shot",
    "shot_rng",
    "estimate_observable",
    "reconstruct_shadow",
    "read_ndjson",
    "write_ndjson",
]
