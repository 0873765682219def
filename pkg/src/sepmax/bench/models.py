"""Data models for benchmark campaigns and their reports."""

from __future__ import annotations

from typing import Any

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from sepmax.config import SCHEMA_VERSION
from sepmax.harness.models import InstanceKind, SolveRequest
from sepmax.models import SolveMode


class GeneratorSpec(BaseModel):
    """``count`` instances of one kind, seeded ``seed_start``, ``seed_start + 1``, ..."""

    kind: InstanceKind
    count: int = Field(default=1, ge=0)
    seed_start: int = Field(default=0, ge=0)
    params: dict[str, Any] = Field(default_factory=dict)


class SolverSpec(BaseModel):
    """One solver configuration run with ``seeds`` consecutive master seeds."""

    solver: str
    label: str | None = None
    params: dict[str, Any] = Field(default_factory=dict)
    seeds: int = Field(default=1, ge=1)
    seed_start: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _params_build_a_request(self) -> SolverSpec:
        try:
            self.request(self.seed_start)
        except ValidationError as exc:
            raise ValueError(f"invalid parameters for solver {self.solver!r}: {exc}") from exc
        return self

    @property
    def name(self) -> str:
        return self.label or self.solver

    def request(self, seed: int) -> SolveRequest:
        return SolveRequest.model_validate({**self.params, "solver": self.solver, "seed": seed})


class CampaignEntry(BaseModel):
    generator: GeneratorSpec
    solvers: list[SolverSpec] = Field(default_factory=list)


class CampaignSpec(BaseModel):
    """A cross product of generated instances and solver configurations."""

    schema_version: int = SCHEMA_VERSION
    name: str = "campaign"
    exact_cap: int = Field(default=12, ge=0)
    workers: int = Field(default=1, ge=1)
    entries: list[CampaignEntry] = Field(default_factory=list)

    @field_validator("schema_version")
    @classmethod
    def _supported_schema(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {value} (expected {SCHEMA_VERSION})")
        return value


class BenchRow(BaseModel):
    """One (instance, solver, params, seed) run.

    ``ratio`` is value / optimum for every mode. ``bound_ok`` applies the
    mode's own success predicate and is ``None`` when no exact reference
    or no guarantee is available.
    """

    model_config = ConfigDict(ser_json_inf_nan="constants")

    entry: int
    solver_index: int
    instance_id: str
    instance_kind: InstanceKind
    instance_seed: int
    generator_params: dict[str, Any] = Field(default_factory=dict)
    solver: str
    label: str
    params: dict[str, Any]
    seed: int
    mode: SolveMode | None = None
    k: int | None = None
    chosen: list[int] | None = None
    value: float | None = None
    residual: float | None = None
    guarantee: float | None = None
    evaluations: int | None = None
    runs: int | None = None
    found: bool | None = None
    exact_value: float | None = None
    exact_size: int | None = None
    ratio: float | None = None
    bound_ok: bool | None = None
    wall_time: float = 0.0
    error: str | None = None

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (self.entry, self.instance_seed, self.solver_index, self.seed)


class SolverSummary(BaseModel):
    """Aggregate of every row sharing one solver label."""

    label: str
    rows: int
    errors: int
    worst_ratio: float | None = None
    mean_ratio: float | None = None
    checked: int = 0
    failures: int = 0
    failure_rate: float | None = None
    allowed_failure_rate: float | None = None
    within_bound: bool | None = None


class BenchReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = SCHEMA_VERSION
    campaign: str
    rows: list[BenchRow] = Field(default_factory=list)
    summaries: list[SolverSummary] = Field(default_factory=list)
