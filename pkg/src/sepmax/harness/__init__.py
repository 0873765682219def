"""Instance files, seeded generators, solver dispatch and solve reports."""

from __future__ import annotations

from sepmax.harness.dispatch import SOLVERS, build_oracle, recertify, solve
from sepmax.harness.generator import gen_bmatching, gen_cover, gen_owa, generate
from sepmax.harness.models import InstanceFile, InstanceKind, SolveReport, SolveRequest
from sepmax.harness.storage import (
    dump_instance,
    load_instance,
    load_solve_report,
    parse_instance,
    render_solve_report,
    save_instance,
)

__all__ = [
    "SOLVERS",
    "InstanceFile",
    "InstanceKind",
    "SolveReport",
    "SolveRequest",
    "build_oracle",
    "dump_instance",
    "gen_bmatching",
    "gen_cover",
    "gen_owa",
    "generate",
    "load_instance",
    "load_solve_report",
    "parse_instance",
    "recertify",
    "render_solve_report",
    "save_instance",
    "solve",
]
