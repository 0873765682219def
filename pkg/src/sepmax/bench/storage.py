"""Campaign specs (YAML) and bench reports (JSON) on disk."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import yaml
from pydantic import ValidationError

from sepmax.bench.models import BenchReport, CampaignSpec
from sepmax.exceptions import InstanceFormatError

logger = logging.getLogger(__name__)


def load_campaign(path: Path) -> CampaignSpec:
    """Load a campaign spec; an empty file is an empty campaign."""
    try:
        data = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise InstanceFormatError(f"Cannot read campaign file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise InstanceFormatError(f"Failed to parse campaign file {path.name}: {exc}") from exc
    if data is None:
        data = {}
    try:
        return CampaignSpec.model_validate(data)
    except ValidationError as exc:
        raise InstanceFormatError(f"Invalid campaign file {path.name}: {exc}") from exc


def save_bench_report(path: Path, report: BenchReport) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2) + "\n")
    logger.debug("Wrote %d rows to %s", len(report.rows), path)


def load_bench_report(path: Path) -> BenchReport:
    try:
        return BenchReport.model_validate(json.loads(path.read_text()))
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise InstanceFormatError(f"Failed to load bench report {path}: {exc}") from exc
