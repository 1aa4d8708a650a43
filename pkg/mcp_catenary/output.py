"""Rendering of command results as text, JSON or CSV."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence

FORMATS = ("text", "json", "csv")


@dataclass
class OutputEnvelope:
    """One command result plus the provenance needed to interpret it.

    ``payload`` and ``provenance`` must hold JSON-native values only so the
    JSON rendering round-trips byte for byte.
    """

    command: str
    payload: Dict[str, Any]
    provenance: Dict[str, Any]
    text_lines: List[str] = field(default_factory=list)
    csv_header: Optional[Sequence[str]] = None
    csv_rows: List[Sequence[Any]] = field(default_factory=list)
    annotate_text: bool = False

    def stamp(self) -> None:
        self.provenance["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")

    def to_dict(self) -> Dict[str, Any]:
        return {"command": self.command, "payload": self.payload, "provenance": self.provenance}

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return dump_json(self.to_dict())
        if fmt == "csv":
            return self._render_csv()
        if fmt == "text":
            return self._render_text()
        raise ValueError(f"Unknown output format: {fmt}")

    def _render_text(self) -> str:
        lines = list(self.text_lines)
        if self.annotate_text:
            for key in sorted(self.provenance):
                if key not in ("tool", "version", "inputs"):
                    lines.append(f"# {key}: {_scalar_text(self.provenance[key])}")
        return "\n".join(lines)

    def _render_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if self.csv_header is None:
            writer.writerow(["field", "value"])
            for key in sorted(self.payload):
                writer.writerow([key, _scalar_text(self.payload[key])])
        else:
            writer.writerow(self.csv_header)
            writer.writerows(self.csv_rows)
        return buffer.getvalue().rstrip("\n")


def dump_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def _scalar_text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    if value is None:
        return "-"
    return str(value)


def set_text(values: Sequence[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"
