"""Run reports: one JSON document per run plus a CSV sidecar for tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .serialize import SCHEMA_VERSION, to_plain

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INCONSISTENT = 2
EXIT_BUDGET = 3


@dataclass
class Report:
    command: str
    config: dict
    verdicts: list = field(default_factory=list)
    obstructions: list = field(default_factory=list)
    consistency_flags: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    sections: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    budget_exceeded: bool = False

    def flag(self, claim: str, agrees: bool, **detail) -> bool:
        self.consistency_flags.append({"claim": claim, "agrees": bool(agrees), **detail})
        return bool(agrees)

    def add_verdict(self, verdict) -> None:
        self.verdicts.append(verdict)
        self.count("evaluations", verdict.evaluations)
        self.count("restarts", verdict.restarts)
        if verdict.budget_hits:
            self.budget_exceeded = self.budget_exceeded or verdict.kind != "Universal"

    def count(self, key: str, amount: int) -> None:
        self.timing[key] = self.timing.get(key, 0) + int(amount)

    @property
    def consistent(self) -> bool:
        return all(f["agrees"] for f in self.consistency_flags)

    def exit_code(self) -> int:
        if self.consistent:
            return EXIT_OK
        return EXIT_BUDGET if self.budget_exceeded else EXIT_INCONSISTENT

    def to_dict(self) -> dict:
        return to_plain(
            {
                "schema_version": SCHEMA_VERSION,
                "command": self.command,
                "config": self.config,
                "verdicts": [v.to_dict() for v in self.verdicts],
                "obstructions": [o.to_dict() if hasattr(o, "to_dict") else o for o in self.obstructions],
                "consistency_flags": self.consistency_flags,
                "consistent": self.consistent,
                "exit_code": self.exit_code(),
                "tables": self.tables,
                **self.sections,
                "timing": self.timing,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def table_csv(self, name: str | None = None) -> str:
        if not self.tables:
            return ""
        name = name or next(iter(self.tables))
        rows = to_plain(self.tables[name])
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        return buf.getvalue()

    def write(self, path, fmt: str = "json") -> list[Path]:
        """Write the report (or, for fmt="csv", its first table); returns the files written."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            path.write_text(self.table_csv())
            return [path]
        path.write_text(self.to_json())
        written = [path]
        for name in self.tables:
            side = path.with_name(f"{path.stem}.{name}.csv")
            side.write_text(self.table_csv(name))
            written.append(side)
        return written
