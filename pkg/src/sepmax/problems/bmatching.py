"""Weighted-B-Matching as a value oracle over the X-side vertices.

v(S) is the maximum weight of an edge set in which each x in S uses at most
c(x) edges, each y at most one, and only edges incident to S are allowed.
With every y adjacent to at most d vertices of X the function is
d-superseparable.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import networkx as nx

from sepmax.exceptions import InvalidParamsError
from sepmax.models import GroundSet, StructuralReport
from sepmax.oracle import Subset, ValueOracle
from sepmax.problems.models import BMatchingInstance, Edge

logger = logging.getLogger(__name__)

_SOURCE = "source"
_SINK = "sink"


def _active_edges(inst: BMatchingInstance, mask: Subset) -> list[Edge]:
    return [e for e in inst.edges if mask >> e.x & 1 and e.weight > 0]


def _min_cost_flow_value(inst: BMatchingInstance, edges: list[Edge]) -> float:
    """Exact optimum for integral weights via min-cost flow.

    source -> x (capacity c(x)), x -> y (capacity 1, cost -w), y -> sink
    (capacity 1), plus an x -> sink bypass of cost 0 so the flow never has to
    use a bad edge just to stay feasible.
    """
    xs = sorted({e.x for e in edges})
    supply = sum(inst.capacities[x] for x in xs)
    graph = nx.DiGraph()
    graph.add_node(_SOURCE, demand=-supply)
    graph.add_node(_SINK, demand=supply)
    for x in xs:
        graph.add_edge(_SOURCE, ("x", x), capacity=inst.capacities[x], weight=0)
        graph.add_edge(("x", x), _SINK, capacity=inst.capacities[x], weight=0)
    for e in edges:
        graph.add_edge(("x", e.x), ("y", e.y), capacity=1, weight=-int(e.weight))
        graph.add_edge(("y", e.y), _SINK, capacity=1, weight=0)
    flow = nx.min_cost_flow(graph)
    return math.fsum(e.weight for e in edges if flow[("x", e.x)][("y", e.y)] > 0)


def _matching_value(inst: BMatchingInstance, edges: list[Edge]) -> float:
    """Exact optimum for real weights: max-weight matching with c(x) copies of each x."""
    graph = nx.Graph()
    for e in edges:
        for copy in range(inst.capacities[e.x]):
            graph.add_edge(("x", e.x, copy), ("y", e.y), weight=e.weight)
    matching = nx.max_weight_matching(graph)
    total: list[float] = []
    for u, v in matching:
        x_node, y_node = (u, v) if u[0] == "x" else (v, u)
        total.append(graph[x_node][y_node]["weight"])
    return math.fsum(total)


def max_weight_b_matching(inst: BMatchingInstance, mask: Subset) -> float:
    """Return the optimal capacitated assignment value restricted to *mask*."""
    if mask < 0 or mask >> inst.nx:
        raise InvalidParamsError(f"subset {mask:#x} references unknown X-vertices")
    edges = _active_edges(inst, mask)
    if not edges:
        return 0.0
    if inst.integral:
        return _min_cost_flow_value(inst, edges)
    return _matching_value(inst, edges)


def bmatching_structure(inst: BMatchingInstance) -> StructuralReport:
    return StructuralReport(source="bmatching", super_p=float(inst.y_degree_bound))


def bmatching_oracle(inst: BMatchingInstance) -> tuple[ValueOracle, StructuralReport]:
    """Return the oracle over X-vertices and its Y-degree bound."""
    ground = GroundSet(
        size=inst.nx,
        labels=tuple(inst.x_labels) if inst.x_labels is not None else None,
    )

    def _value(mask: Subset) -> float:
        return max_weight_b_matching(inst, mask)

    return ValueOracle(ground, _value, name="bmatching"), bmatching_structure(inst)


def monroe_instance(
    approvals: Sequence[Sequence[int]],
    n_items: int,
    k: int,
) -> BMatchingInstance:
    """Build the Weighted-B-Matching instance behind Monroe winner determination.

    X are the items, Y the agents; an edge of weight 1 joins each agent to
    every item it approves, and each item may represent ceil(n_agents / K)
    agents.
    """
    if k < 1:
        raise InvalidParamsError(f"committee size must be positive, got {k}")
    n_agents = len(approvals)
    if n_agents == 0:
        raise InvalidParamsError("Monroe reduction needs at least one agent")
    capacity = max(1, math.ceil(n_agents / k))
    edges = [
        Edge(x=item, y=agent, weight=1.0)
        for agent, approved in enumerate(approvals)
        for item in sorted(set(approved))
    ]
    return BMatchingInstance(
        nx=n_items,
        ny=n_agents,
        edges=edges,
        capacities=[capacity] * n_items,
    )
