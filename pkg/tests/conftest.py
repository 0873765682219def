"""Shared test fixtures for sepmax."""

from __future__ import annotations

from pathlib import Path

import pytest

from sepmax.harness.models import InstanceFile, InstanceKind
from sepmax.harness.storage import save_instance
from sepmax.models import SeparabilityKind
from sepmax.oracle import ValueOracle
from sepmax.problems.bmatching import bmatching_oracle
from sepmax.problems.cover import cover_oracle
from sepmax.problems.models import BMatchingInstance, CoverInstance, Edge, OwaInstance
from sepmax.problems.owa import owa_oracle


@pytest.fixture
def inst_a() -> CoverInstance:
    """Elements e1..e4 with unit weights; S1={e1,e2}, S2={e2,e3}, S3={e3,e4}."""
    return CoverInstance(
        n_elements=4,
        weights=[1.0, 1.0, 1.0, 1.0],
        sets=[[0, 1], [1, 2], [2, 3]],
        labels=["S1", "S2", "S3"],
    )


@pytest.fixture
def inst_b() -> OwaInstance:
    """Items x1..x3; a1 approves {x1,x2}, a2 approves {x2,x3}; alpha = (1, 0)."""
    return OwaInstance(
        n_agents=2,
        m_items=3,
        k=2,
        approvals=[[0, 1], [1, 2]],
        owa=[1.0, 0.0],
    )


@pytest.fixture
def inst_c() -> BMatchingInstance:
    """Edges (x1,y1,3), (x1,y2,2), (x2,y2,4); c(x1)=2, c(x2)=1."""
    return BMatchingInstance(
        nx=2,
        ny=2,
        edges=[Edge(x=0, y=0, weight=3), Edge(x=0, y=1, weight=2), Edge(x=1, y=1, weight=4)],
        capacities=[2, 1],
    )


@pytest.fixture
def oracle_a(inst_a: CoverInstance) -> ValueOracle:
    return cover_oracle(inst_a)[0]


@pytest.fixture
def oracle_b(inst_b: OwaInstance) -> ValueOracle:
    return owa_oracle(inst_b)[0]


@pytest.fixture
def oracle_c(inst_c: BMatchingInstance) -> ValueOracle:
    return bmatching_oracle(inst_c)[0]


@pytest.fixture
def zero_oracle() -> ValueOracle:
    return ValueOracle.from_function(3, lambda mask: 0.0, name="zero")


@pytest.fixture
def square_oracle() -> ValueOracle:
    """v(S) = |S|^2 on three elements: monotone but not submodular."""
    return ValueOracle.from_function(3, lambda mask: float(mask.bit_count() ** 2), name="square")


@pytest.fixture
def inst_a_file(inst_a: CoverInstance, tmp_path: Path) -> Path:
    instance = InstanceFile(
        id="inst-a",
        kind=InstanceKind.COVER,
        declared_p={
            SeparabilityKind.SUPERSEPARABLE: 2.0,
            SeparabilityKind.AT_MOST_SUBSEPARABLE: 2.0,
            SeparabilityKind.AT_LEAST_SUBSEPARABLE: 1.0,
        },
        payload=inst_a,
    )
    path = tmp_path / "inst_a.yaml"
    save_instance(path, instance)
    return path


@pytest.fixture
def inst_b_file(inst_b: OwaInstance, tmp_path: Path) -> Path:
    instance = InstanceFile(id="inst-b", kind=InstanceKind.OWA, payload=inst_b)
    path = tmp_path / "inst_b.yaml"
    save_instance(path, instance)
    return path

