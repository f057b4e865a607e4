"""Run reports: inputs, method-tagged outputs and truncation diagnostics.

A RunReport serializes to JSON (indent=2, default=str) or to CSV rows. The
inputs digest is the SHA-256 of the canonical JSON of the inputs, so two runs
with the same inputs share a digest.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import datetime, timezone
import hashlib
import io
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from .truncation import ModeSup

logger = logging.getLogger(__name__)

CLOSED_FORM = "closed-form"
ORACLE = "oracle"

__all__ = ["CLOSED_FORM", "ORACLE", "RunReport", "inputs_digest", "to_jsonable"]


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, complex numbers and records to JSON types."""
    if isinstance(value, ModeSup):
        return value.to_dict()
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, complex | np.complexfloating):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def inputs_digest(inputs: dict[str, Any]) -> str:
    canonical = json.dumps(to_jsonable(inputs), sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    outputs: dict[str, Any] = field(default_factory=dict)
    truncation: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )

    @property
    def inputs_digest(self) -> str:
        return inputs_digest(self.inputs)

    def add_output(self, name: str, value: Any, method: str = CLOSED_FORM) -> None:
        """Record an output tagged with how it was obtained."""
        if method not in (CLOSED_FORM, ORACLE):
            raise ValueError(f"unknown method tag '{method}'")
        self.outputs[name] = {"value": to_jsonable(value), "method": method}
        if isinstance(value, ModeSup):
            self.add_truncation(name, value)

    def add_truncation(self, name: str, sup: ModeSup) -> None:
        self.truncation[name] = sup.to_dict()
        if sup.divergent:
            self.warn(
                f"{name}: supremum grows by {sup.growth:.4g} between "
                f"n={sup.n_tail} and n={sup.n_max}"
            )

    def warn(self, message: str) -> None:
        logger.warning("%s: %s", self.command, message)
        self.warnings.append(message)

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": "ok",
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "inputs_digest": self.inputs_digest,
            "outputs": self.outputs,
            "truncation": self.truncation,
            "warnings": list(self.warnings),
            "timestamp": self.timestamp,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def to_csv(self) -> str:
        """Flatten outputs to name,method,value rows.

        Tabular outputs (lists of dict rows) are written as their own block
        after a blank line, one header per table.
        """
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "method", "value"])
        tables = []
        for name, entry in self.outputs.items():
            value = entry["value"]
            if isinstance(value, list) and value and isinstance(value[0], dict):
                tables.append((name, value))
                continue
            if isinstance(value, dict | list):
                value = json.dumps(value, default=str)
            writer.writerow([name, entry["method"], value])
        for name, rows in tables:
            writer.writerow([])
            writer.writerow([f"# {name}"])
            header = list(rows[0].keys())
            writer.writerow(header)
            for row in rows:
                writer.writerow(
                    [
                        json.dumps(row.get(k)) if isinstance(row.get(k), list) else row.get(k)
                        for k in header
                    ]
                )
        return buf.getvalue()

    def render(self, fmt: str = "json") -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown output format '{fmt}'")

    def write(self, directory: str | Path, fmt: str = "json") -> Path:
        """Write the report as <command>.<fmt> inside directory."""
        out_dir = Path(directory)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{self.command.replace(' ', '_')}.{fmt}"
        path.write_text(self.render(fmt), encoding="utf-8")
        logger.debug("wrote report %s", path)
        return path
