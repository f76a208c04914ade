"""
CSV and JSON artifact writers.

Every CSV starts with comment lines carrying the command, the sha256 of the
config file and the seed, followed by the column header. Floats are written
with 17 significant digits; failed rows carry nan and flag = 1. The JSON
twin holds the same rows under {metadata, rows}.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence

from pydantic import BaseModel

logger = logging.getLogger(__name__)

NAN = float("nan")


@dataclass
class ArtifactTable:
    """One CSV/JSON artifact pair; name is the file stem"""
    name: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(int(row.get("flag", 0)) for row in self.rows)

    def failed_row(self, **known: Any) -> Dict[str, Any]:
        """Row for a computation that raised: nan everywhere except the known keys"""
        row = {column: NAN for column in self.columns}
        row.update(known)
        row["flag"] = 1
        return row


class ArtifactDocument(BaseModel):
    metadata: Dict[str, Any]
    rows: List[Dict[str, Any]]


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.17g}"
    return str(value)


def render_csv(table: ArtifactTable, header: Dict[str, Any]) -> str:
    lines = [f"# {key}: {value}" for key, value in header.items()]
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(format_value(row[column]) for column in table.columns))
    return "\n".join(lines) + "\n"


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    return value


def render_json(table: ArtifactTable, header: Dict[str, Any]) -> str:
    document = ArtifactDocument(
        metadata=_json_safe({**header, **table.metadata}),
        rows=_json_safe([{column: row[column] for column in table.columns} for row in table.rows]),
    )
    return document.model_dump_json(indent=2) + "\n"


def write_artifacts(tables: Sequence[ArtifactTable], out_dir: Path, header: Dict[str, Any]) -> List[Path]:
    """Write <name>.csv and <name>.json for every table; returns the paths written"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for table in tables:
        csv_path = out_dir / f"{table.name}.csv"
        json_path = out_dir / f"{table.name}.json"
        csv_path.write_text(render_csv(table, header), encoding="utf-8")
        json_path.write_text(render_json(table, header), encoding="utf-8")
        written.extend([csv_path, json_path])
        logger.info(f"Wrote {csv_path} ({len(table.rows)} rows, {table.violations} flagged)")
    return written
