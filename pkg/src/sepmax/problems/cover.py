"""Weighted max-cover as a value oracle over the set collection.

v(C) is the total weight of elements covered by the union of C. An element
of frequency f contributes a term that is f-superseparable and
at-most-f-subseparable (and at-least-f-subseparable), and these properties
survive non-negative sums, so the frequency bounds are the certified p.
"""

from __future__ import annotations

import logging

import numpy as np

from sepmax.models import GroundSet, StructuralReport
from sepmax.oracle import Subset, ValueOracle, members
from sepmax.problems.models import CoverInstance

logger = logging.getLogger(__name__)


def cover_structure(inst: CoverInstance) -> StructuralReport:
    """Frequency bounds over elements with positive weight."""
    return StructuralReport(
        source="cover",
        super_p=float(inst.max_frequency),
        at_most_p=float(inst.max_frequency),
        at_least_p=float(inst.min_frequency),
        average_p=inst.average_frequency,
    )


def cover_oracle(inst: CoverInstance) -> tuple[ValueOracle, StructuralReport]:
    """Return the coverage oracle and its structural report."""
    incidence = np.zeros((inst.n_sets, inst.n_elements), dtype=bool)
    for i, elements in enumerate(inst.sets):
        incidence[i, elements] = True
    weights = np.asarray(inst.weights, dtype=np.float64)

    def _covered_weight(mask: Subset) -> float:
        if not mask:
            return 0.0
        covered = incidence[members(mask)].any(axis=0)
        return float(weights[covered].sum())

    ground = GroundSet(
        size=inst.n_sets,
        labels=tuple(inst.labels) if inst.labels is not None else None,
    )
    report = cover_structure(inst)
    logger.debug(
        "Cover oracle over %d sets: max_freq=%s min_freq=%s",
        inst.n_sets,
        report.super_p,
        report.at_least_p,
    )
    return ValueOracle(ground, _covered_weight, name="cover"), report
