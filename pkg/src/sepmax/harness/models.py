"""File-level models: instance files, solve requests and solve reports."""

from __future__ import annotations

from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from sepmax.config import SCHEMA_VERSION, SOLVER_NAMES
from sepmax.models import (
    SeparabilityKind,
    SeparabilityReport,
    SolverBudgets,
    SolveResult,
    StructuralReport,
)
from sepmax.problems.models import BMatchingInstance, CoverInstance, OwaInstance

Payload = CoverInstance | OwaInstance | BMatchingInstance

_PAYLOAD_TYPES: dict[str, type[BaseModel]] = {
    "cover": CoverInstance,
    "owa": OwaInstance,
    "bmatching": BMatchingInstance,
}


class InstanceKind(StrEnum):
    COVER = "cover"
    OWA = "owa"
    BMATCHING = "bmatching"


def _check_schema(version: int) -> int:
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version} (expected {SCHEMA_VERSION})")
    return version


class InstanceFile(BaseModel):
    """A problem instance as stored on disk."""

    schema_version: int = SCHEMA_VERSION
    id: str
    kind: InstanceKind
    declared_p: dict[SeparabilityKind, float] = Field(default_factory=dict)
    payload: Payload

    @field_validator("schema_version")
    @classmethod
    def _supported_schema(cls, value: int) -> int:
        return _check_schema(value)

    @model_validator(mode="before")
    @classmethod
    def _payload_by_kind(cls, data: Any) -> Any:
        if isinstance(data, dict) and isinstance(data.get("payload"), dict):
            payload_type = _PAYLOAD_TYPES.get(str(data.get("kind")))
            if payload_type is None:
                raise ValueError(f"unknown instance kind {data.get('kind')!r}")
            data = {**data, "payload": payload_type.model_validate(data["payload"])}
        return data

    @model_validator(mode="after")
    def _kind_matches_payload(self) -> InstanceFile:
        if not isinstance(self.payload, _PAYLOAD_TYPES[self.kind]):
            raise ValueError(f"payload does not match kind {self.kind}")
        return self

    @property
    def ground_size(self) -> int:
        if isinstance(self.payload, CoverInstance):
            return self.payload.n_sets
        if isinstance(self.payload, OwaInstance):
            return self.payload.m_items
        return self.payload.nx


class SolveRequest(BaseModel):
    """Solver name plus every tunable a solver may read.

    Unset fields fall back to solver defaults; ``p`` overrides the adapter's
    structural parameter.
    """

    solver: str
    k: int = Field(default=1, ge=0)
    beta: float | None = Field(default=None, gt=0.0)
    epsilon: float = Field(default=0.05, gt=0.0, lt=1.0)
    p: float | None = Field(default=None, gt=0.0)
    gamma: float | None = Field(default=None, gt=0.0)
    epsilon_ratio: float = Field(default=0.1, gt=0.0, lt=1.0)
    k_max: int | None = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0, lt=1 << 64)
    workers: int = Field(default=1, ge=1)
    budgets: SolverBudgets = Field(default_factory=SolverBudgets)

    @field_validator("solver")
    @classmethod
    def _known_solver(cls, value: str) -> str:
        if value not in SOLVER_NAMES:
            raise ValueError(f"unknown solver {value!r}; choose from {', '.join(SOLVER_NAMES)}")
        return value

    def echo(self) -> dict[str, Any]:
        """Parameters recorded in reports (no budgets or worker counts)."""
        return self.model_dump(exclude={"budgets", "workers", "solver"})


class SolveReport(BaseModel):
    """Machine-readable outcome of one solve."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = SCHEMA_VERSION
    instance_id: str
    instance_kind: InstanceKind
    solver: str
    params: dict[str, Any]
    p_used: float | None = None
    structural: StructuralReport
    declared_p: dict[SeparabilityKind, float] = Field(default_factory=dict)
    certification: dict[SeparabilityKind, SeparabilityReport] = Field(default_factory=dict)
    result: SolveResult
    chosen_labels: list[str] | None = None

    @field_validator("schema_version")
    @classmethod
    def _supported_schema(cls, value: int) -> int:
        return _check_schema(value)
