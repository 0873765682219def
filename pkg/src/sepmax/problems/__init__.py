"""Problem adapters that build value oracles with certified separability parameters."""

from __future__ import annotations

from sepmax.problems.bmatching import bmatching_oracle, max_weight_b_matching, monroe_instance
from sepmax.problems.cover import cover_oracle
from sepmax.problems.models import BMatchingInstance, CoverInstance, Edge, OwaInstance
from sepmax.problems.owa import OWA_PRESETS, chamberlin_courant, k_approval_bloc, owa_oracle, pav

__all__ = [
    "OWA_PRESETS",
    "BMatchingInstance",
    "CoverInstance",
    "Edge",
    "OwaInstance",
    "bmatching_oracle",
    "chamberlin_courant",
    "cover_oracle",
    "k_approval_bloc",
    "max_weight_b_matching",
    "monroe_instance",
    "owa_oracle",
    "pav",
]
