"""OWA-based item selection with k-approval utilities.

Each agent sorts its utilities for the chosen items in descending order and
scores them with the OWA vector, truncated at min(K, |S|). With k-approval
utilities an agent holding c approved items in S scores alpha_1 + ... +
alpha_min(K, c), so v(S) is a sum of per-agent prefix sums.
"""

from __future__ import annotations

import logging
from itertools import accumulate

import numpy as np

from sepmax.exceptions import InvalidParamsError
from sepmax.models import GroundSet, StructuralReport
from sepmax.oracle import Subset, ValueOracle
from sepmax.problems.models import OwaInstance

logger = logging.getLogger(__name__)


def chamberlin_courant(k: int) -> list[float]:
    """alpha = (1, 0, ..., 0): each agent counts only its best item."""
    return [1.0] + [0.0] * (k - 1)


def pav(k: int) -> list[float]:
    """Proportional approval voting: alpha = (1, 1/2, ..., 1/K)."""
    return [1.0 / (j + 1) for j in range(k)]


def k_approval_bloc(k: int) -> list[float]:
    """alpha = (1, ..., 1): approval-score coverage."""
    return [1.0] * k


OWA_PRESETS = {
    "cc": chamberlin_courant,
    "pav": pav,
    "bloc": k_approval_bloc,
}


def owa_structure(inst: OwaInstance) -> StructuralReport:
    """k-superseparable and at-most-k-subseparable when alpha is non-increasing."""
    return StructuralReport(
        source="owa",
        super_p=float(inst.k),
        at_most_p=float(inst.k),
        certified=inst.non_increasing,
    )


def owa_oracle(inst: OwaInstance, k: int | None = None) -> tuple[ValueOracle, StructuralReport]:
    """Return the item-selection oracle for committee size *k* (default: len(owa))."""
    k = len(inst.owa) if k is None else k
    if k < 1:
        raise InvalidParamsError(f"committee size must be positive, got {k}")
    if len(inst.owa) < k:
        raise InvalidParamsError(f"OWA vector has {len(inst.owa)} weights but K={k}")
    report = owa_structure(inst)
    if not report.certified:
        logger.warning("OWA vector %s is not non-increasing; p is not certified", inst.owa)

    # prefix[c] = alpha_1 + ... + alpha_min(K, c)
    head = list(accumulate(inst.owa[:k], initial=0.0))
    prefix = np.array(head + [head[-1]] * max(0, inst.k - k), dtype=np.float64)
    approval_masks = [sum(1 << x for x in approved) for approved in inst.approvals]

    def _owa_value(mask: Subset) -> float:
        if not mask:
            return 0.0
        counts = [(a & mask).bit_count() for a in approval_masks]
        return float(prefix[counts].sum())

    ground = GroundSet(
        size=inst.m_items,
        labels=tuple(inst.item_labels) if inst.item_labels is not None else None,
    )
    return ValueOracle(ground, _owa_value, name="owa"), report
