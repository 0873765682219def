"""Pydantic models for the core sepmax data structures."""

from __future__ import annotations

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from sepmax.config import ENUMERATION_BUDGET, EXHAUSTIVE_LIMIT, RUN_BUDGET


class GroundSet(BaseModel):
    """Indexed universe X = {0, ..., size - 1} a set function is defined over."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(ge=1)
    labels: tuple[str, ...] | None = None

    @model_validator(mode="after")
    def _labels_match_size(self) -> GroundSet:
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError(f"labels has {len(self.labels)} entries, expected {self.size}")
        return self

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def label(self, index: int) -> str:
        if self.labels is None:
            return str(index)
        return self.labels[index]


class SeparabilityKind(StrEnum):
    """The three p-separability inequalities."""

    SUPERSEPARABLE = "superseparable"
    AT_LEAST_SUBSEPARABLE = "at-least-subseparable"
    AT_MOST_SUBSEPARABLE = "at-most-subseparable"


class SeparabilityReport(BaseModel):
    """Outcome of checking one separability inequality at a given p."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    kind: SeparabilityKind
    p_tested: float = Field(ge=0.0)
    holds: bool
    witness: list[int] | None = None
    violation: float | None = None
    extremal_p: float | None = None
    sampled: bool = False
    trials: int | None = None

    @model_validator(mode="after")
    def _witness_iff_failure(self) -> SeparabilityReport:
        if self.holds == (self.witness is not None):
            raise ValueError("a witness must be present exactly when the inequality fails")
        return self


class StructureWitness(BaseModel):
    """Subsets demonstrating a structural violation.

    For monotonicity, b = a plus one element and v(b) < v(a).
    For submodularity, v(a + x) - v(a) < v(b + x) - v(b).
    For non-negativity, only a is set.
    """

    a: list[int]
    b: list[int] | None = None
    x: int | None = None


class StructureReport(BaseModel):
    """Non-negativity, monotonicity and submodularity of a set function."""

    nonneg: bool
    monotone: bool
    submodular: bool
    witnesses: dict[str, StructureWitness] = Field(default_factory=dict)
    sampled: bool = False
    trials: int | None = None

    @property
    def ok(self) -> bool:
        return self.nonneg and self.monotone and self.submodular


class StructuralReport(BaseModel):
    """Separability parameters an adapter certifies by construction."""

    source: str
    super_p: float | None = None
    at_most_p: float | None = None
    at_least_p: float | None = None
    average_p: float | None = None
    certified: bool = True

    def parameter(self, kind: SeparabilityKind) -> float | None:
        """Return the certified p for *kind*, if the adapter reports one."""
        return {
            SeparabilityKind.SUPERSEPARABLE: self.super_p,
            SeparabilityKind.AT_MOST_SUBSEPARABLE: self.at_most_p,
            SeparabilityKind.AT_LEAST_SUBSEPARABLE: self.at_least_p,
        }[kind]


class SolveMode(StrEnum):
    """Approximation target a solver was run for."""

    MAX = "max"
    MIN = "min"
    MIN_OR_MAX = "min_or_max"
    EXACT = "exact"


class SchemeParams(BaseModel):
    """Parameters shared by the approximation schemes.

    Mode-specific ranges (beta < 1 for maximization, beta > 1 for the
    randomized variants) are enforced by the solvers themselves.
    """

    k: int = Field(ge=0)
    beta: float | None = Field(default=None, ge=0.0)
    epsilon: float = Field(default=0.05, gt=0.0, lt=1.0)
    p: float | None = Field(default=None, gt=0.0)


class SolverBudgets(BaseModel):
    """Per-invocation resource guards."""

    enumeration: int = Field(default=ENUMERATION_BUDGET, ge=1)
    runs: int = Field(default=RUN_BUDGET, ge=1)
    exhaustive_limit: int = Field(default=EXHAUSTIVE_LIMIT, ge=1)


class SolveResult(BaseModel):
    """A chosen subset together with its value and the certificate behind it."""

    solver: str
    mode: SolveMode
    k: int = Field(ge=0)
    chosen: list[int]
    value: float
    residual: float
    guarantee: float | None = None
    evaluations: int = Field(default=0, ge=0)
    seed: int | None = None
    runs: int = Field(default=0, ge=0)
    found: bool | None = None

    @property
    def mask(self) -> int:
        mask = 0
        for x in self.chosen:
            mask |= 1 << x
        return mask
