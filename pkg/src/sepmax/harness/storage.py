"""Reading and writing instance files (YAML) and solve reports (JSON)."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import yaml
from pydantic import ValidationError

from sepmax.exceptions import InstanceFormatError
from sepmax.harness.models import InstanceFile, SolveReport

logger = logging.getLogger(__name__)


def dump_instance(instance: InstanceFile) -> str:
    """Serialize an instance to canonical YAML.

    PyYAML writes floats with ``repr`` precision, so values round-trip exactly.
    """
    data = instance.model_dump(mode="json", exclude_none=True)
    return yaml.safe_dump(data, default_flow_style=None, sort_keys=False)


def parse_instance(text: str, source: str = "<string>") -> InstanceFile:
    """Parse and validate YAML instance text."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise InstanceFormatError(f"Failed to parse instance file {source}: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceFormatError(f"Instance file {source} must contain a mapping")
    try:
        return InstanceFile.model_validate(data)
    except ValidationError as exc:
        raise InstanceFormatError(f"Invalid instance file {source}: {exc}") from exc


def load_instance(path: Path) -> InstanceFile:
    """Read an instance file from *path*."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceFormatError(f"Cannot read instance file {path}: {exc}") from exc
    return parse_instance(text, source=path.name)


def save_instance(path: Path, instance: InstanceFile) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_instance(instance))
    logger.debug("Wrote instance %s to %s", instance.id, path)


def render_solve_report(report: SolveReport) -> str:
    """Canonical JSON for a solve report; identical inputs give identical bytes."""
    return report.model_dump_json(indent=2) + "\n"


def load_solve_report(path: Path) -> SolveReport:
    try:
        return SolveReport.model_validate(json.loads(path.read_text()))
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise InstanceFormatError(f"Failed to load solve report {path}: {exc}") from exc
