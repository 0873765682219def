"""Benchmark campaigns: generated instances crossed with solver configurations."""

from __future__ import annotations

from sepmax.bench.models import BenchReport, BenchRow, CampaignSpec, SolverSummary
from sepmax.bench.runner import run_campaign

__all__ = ["BenchReport", "BenchRow", "CampaignSpec", "SolverSummary", "run_campaign"]
