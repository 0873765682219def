"""Pydantic models for the concrete problem families."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator


class CoverInstance(BaseModel):
    """Weighted max-cover: pick K sets maximizing the weight of covered elements."""

    n_elements: int = Field(ge=1)
    weights: list[float]
    sets: list[list[int]] = Field(min_length=1)
    labels: list[str] | None = None

    @model_validator(mode="after")
    def _validate(self) -> CoverInstance:
        if len(self.weights) != self.n_elements:
            raise ValueError(f"expected {self.n_elements} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("element weights must be non-negative")
        for i, members in enumerate(self.sets):
            if len(set(members)) != len(members):
                raise ValueError(f"set {i} lists an element twice")
            bad = [e for e in members if not 0 <= e < self.n_elements]
            if bad:
                raise ValueError(f"set {i} references unknown elements {bad}")
        if self.labels is not None and len(self.labels) != len(self.sets):
            raise ValueError("labels must name every set")
        return self

    @property
    def n_sets(self) -> int:
        return len(self.sets)

    def frequencies(self) -> list[int]:
        """Number of sets containing each element."""
        freq = [0] * self.n_elements
        for members in self.sets:
            for e in members:
                freq[e] += 1
        return freq

    def _weighted_frequencies(self) -> list[int]:
        # Zero-weight elements cannot affect v and are ignored.
        return [f for f, w in zip(self.frequencies(), self.weights, strict=True) if w > 0]

    @property
    def max_frequency(self) -> int:
        return max(self._weighted_frequencies(), default=0)

    @property
    def min_frequency(self) -> int:
        return min(self._weighted_frequencies(), default=0)

    @property
    def average_frequency(self) -> float:
        freqs = self._weighted_frequencies()
        return sum(freqs) / len(freqs) if freqs else 0.0


class OwaInstance(BaseModel):
    """OWA-based item selection with k-approval utilities.

    Agent i values each approved item at 1 and every other item at 0. The
    OWA vector is applied to the agent's utilities sorted descending.
    """

    n_agents: int = Field(ge=1)
    m_items: int = Field(ge=1)
    k: int = Field(ge=1)
    approvals: list[list[int]]
    owa: list[float] = Field(min_length=1)
    item_labels: list[str] | None = None

    @model_validator(mode="after")
    def _validate(self) -> OwaInstance:
        if len(self.approvals) != self.n_agents:
            raise ValueError(f"expected {self.n_agents} approval sets, got {len(self.approvals)}")
        if self.k > self.m_items:
            raise ValueError(f"k={self.k} exceeds the number of items {self.m_items}")
        for i, approved in enumerate(self.approvals):
            if len(set(approved)) != self.k or len(approved) != self.k:
                raise ValueError(f"agent {i} must approve exactly {self.k} distinct items")
            bad = [x for x in approved if not 0 <= x < self.m_items]
            if bad:
                raise ValueError(f"agent {i} approves unknown items {bad}")
        if any(a < 0 for a in self.owa):
            raise ValueError("OWA weights must be non-negative")
        if self.item_labels is not None and len(self.item_labels) != self.m_items:
            raise ValueError("item_labels must name every item")
        return self

    @property
    def non_increasing(self) -> bool:
        return all(a >= b for a, b in zip(self.owa, self.owa[1:], strict=False))


class Edge(BaseModel):
    x: int = Field(ge=0)
    y: int = Field(ge=0)
    weight: float = Field(ge=0.0)


class BMatchingInstance(BaseModel):
    """Weighted-B-Matching: X-side capacities c(x), unit capacity on Y."""

    nx: int = Field(ge=1)
    ny: int = Field(ge=1)
    edges: list[Edge]
    capacities: list[int]
    x_labels: list[str] | None = None

    @model_validator(mode="after")
    def _validate(self) -> BMatchingInstance:
        if len(self.capacities) != self.nx:
            raise ValueError(f"expected {self.nx} capacities, got {len(self.capacities)}")
        if any(c < 1 for c in self.capacities):
            raise ValueError("capacities must be positive integers")
        seen: set[tuple[int, int]] = set()
        for edge in self.edges:
            if edge.x >= self.nx or edge.y >= self.ny:
                raise ValueError(f"edge ({edge.x}, {edge.y}) references an unknown vertex")
            if (edge.x, edge.y) in seen:
                raise ValueError(f"duplicate edge ({edge.x}, {edge.y})")
            seen.add((edge.x, edge.y))
        if self.x_labels is not None and len(self.x_labels) != self.nx:
            raise ValueError("x_labels must name every X-vertex")
        return self

    def y_degrees(self) -> list[int]:
        degree = [0] * self.ny
        for edge in self.edges:
            degree[edge.y] += 1
        return degree

    @property
    def y_degree_bound(self) -> int:
        return max(self.y_degrees(), default=0)

    @property
    def integral(self) -> bool:
        return all(float(e.weight).is_integer() for e in self.edges)
