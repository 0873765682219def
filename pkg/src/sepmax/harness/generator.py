"""Seeded instance generators whose structural bounds hold by construction.

Cover: every element joins between ``min_freq`` and ``max_freq`` distinct
sets. OWA: every agent approves exactly ``k`` distinct items. B-matching:
every Y-vertex gets between 1 and ``y_degree`` distinct X-neighbours.
"""

from __future__ import annotations

import logging
from typing import Any, Literal

import numpy as np

from sepmax.exceptions import InfeasibleParamsError, InvalidParamsError
from sepmax.harness.models import InstanceFile, InstanceKind
from sepmax.models import SeparabilityKind
from sepmax.problems.models import BMatchingInstance, CoverInstance, Edge, OwaInstance
from sepmax.problems.owa import OWA_PRESETS
from sepmax.solvers.rng import check_seed

logger = logging.getLogger(__name__)

WeightMode = Literal["unit", "integer", "real"]


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(check_seed(seed))


def _weights(rng: np.random.Generator, count: int, mode: str) -> list[float]:
    if mode == "unit":
        return [1.0] * count
    if mode == "integer":
        return [float(w) for w in rng.integers(1, 10, size=count)]
    if mode == "real":
        return [float(w) for w in rng.uniform(0.5, 5.0, size=count)]
    raise InvalidParamsError(f"unknown weight mode {mode!r}")


def gen_cover(
    n_elements: int,
    n_sets: int,
    max_freq: int,
    seed: int,
    *,
    min_freq: int = 1,
    weights: WeightMode = "integer",
) -> InstanceFile:
    """Random weighted cover instance with element frequencies in [min_freq, max_freq]."""
    if n_elements < 1 or n_sets < 1:
        raise InfeasibleParamsError("cover instances need at least one element and one set")
    if not 1 <= min_freq <= max_freq:
        raise InfeasibleParamsError(f"need 1 <= min_freq <= max_freq, got {min_freq}, {max_freq}")
    if max_freq > n_sets:
        raise InfeasibleParamsError(f"max_freq={max_freq} exceeds the number of sets {n_sets}")

    rng = _rng(seed)
    sets: list[list[int]] = [[] for _ in range(n_sets)]
    for element in range(n_elements):
        freq = int(rng.integers(min_freq, max_freq + 1))
        for s in rng.choice(n_sets, size=freq, replace=False):
            sets[int(s)].append(element)

    payload = CoverInstance(
        n_elements=n_elements,
        weights=_weights(rng, n_elements, weights),
        sets=[sorted(s) for s in sets],
    )
    return InstanceFile(
        id=f"cover-n{n_elements}-m{n_sets}-f{min_freq}to{max_freq}-s{seed}",
        kind=InstanceKind.COVER,
        declared_p={
            SeparabilityKind.SUPERSEPARABLE: float(max_freq),
            SeparabilityKind.AT_MOST_SUBSEPARABLE: float(max_freq),
            SeparabilityKind.AT_LEAST_SUBSEPARABLE: float(min_freq),
        },
        payload=payload,
    )


def gen_owa(
    n_agents: int,
    n_items: int,
    k: int,
    seed: int,
    *,
    committee: int = 2,
    preset: str = "cc",
) -> InstanceFile:
    """Random k-approval profile scored by a named OWA preset of length *committee*."""
    if n_agents < 1 or n_items < 1:
        raise InfeasibleParamsError("OWA instances need at least one agent and one item")
    if not 1 <= k <= n_items:
        raise InfeasibleParamsError(f"need 1 <= k <= items, got k={k}, items={n_items}")
    if committee < 1:
        raise InfeasibleParamsError(f"committee size must be positive, got {committee}")
    if preset not in OWA_PRESETS:
        raise InvalidParamsError(
            f"unknown OWA preset {preset!r}; choose from {sorted(OWA_PRESETS)}"
        )

    rng = _rng(seed)
    approvals = [
        sorted(int(x) for x in rng.choice(n_items, size=k, replace=False))
        for _ in range(n_agents)
    ]
    payload = OwaInstance(
        n_agents=n_agents,
        m_items=n_items,
        k=k,
        approvals=approvals,
        owa=OWA_PRESETS[preset](committee),
    )
    return InstanceFile(
        id=f"owa-{preset}-a{n_agents}-i{n_items}-k{k}-K{committee}-s{seed}",
        kind=InstanceKind.OWA,
        declared_p={
            SeparabilityKind.SUPERSEPARABLE: float(k),
            SeparabilityKind.AT_MOST_SUBSEPARABLE: float(k),
        },
        payload=payload,
    )


def gen_bmatching(
    nx: int,
    ny: int,
    y_degree: int,
    seed: int,
    *,
    max_capacity: int = 2,
    weights: WeightMode = "integer",
) -> InstanceFile:
    """Random bipartite instance with every Y-vertex of degree at most *y_degree*."""
    if nx < 1 or ny < 1:
        raise InfeasibleParamsError("b-matching instances need vertices on both sides")
    if not 1 <= y_degree <= nx:
        raise InfeasibleParamsError(f"need 1 <= y_degree <= nx, got y_degree={y_degree}, nx={nx}")
    if max_capacity < 1:
        raise InfeasibleParamsError(f"max_capacity must be positive, got {max_capacity}")

    rng = _rng(seed)
    pairs: list[tuple[int, int]] = []
    for y in range(ny):
        degree = int(rng.integers(1, y_degree + 1))
        pairs.extend((int(x), y) for x in rng.choice(nx, size=degree, replace=False))
    edge_weights = _weights(rng, len(pairs), weights)
    payload = BMatchingInstance(
        nx=nx,
        ny=ny,
        edges=[
            Edge(x=x, y=y, weight=w) for (x, y), w in zip(pairs, edge_weights, strict=True)
        ],
        capacities=[int(c) for c in rng.integers(1, max_capacity + 1, size=nx)],
    )
    return InstanceFile(
        id=f"bmatching-x{nx}-y{ny}-d{y_degree}-s{seed}",
        kind=InstanceKind.BMATCHING,
        declared_p={SeparabilityKind.SUPERSEPARABLE: float(y_degree)},
        payload=payload,
    )


def generate(kind: InstanceKind | str, seed: int, params: dict[str, Any]) -> InstanceFile:
    """Dispatch to the generator for *kind* with keyword *params*."""
    try:
        if kind == InstanceKind.COVER:
            return gen_cover(seed=seed, **params)
        if kind == InstanceKind.OWA:
            return gen_owa(seed=seed, **params)
        if kind == InstanceKind.BMATCHING:
            return gen_bmatching(seed=seed, **params)
    except TypeError as exc:
        raise InvalidParamsError(f"bad generator parameters for {kind}: {exc}") from exc
    raise InvalidParamsError(f"unknown instance kind {kind!r}")
