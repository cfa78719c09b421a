"""Run reports: typed check records with stable json and tabular text output."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

SCHEMA_TAG = "acphase-report/1"


@dataclass
class CheckRecord:
    name: str
    status: str  # pass | fail | skipped
    measured: object = None
    expected: object = None
    tolerance: object = None
    detail: str = ""


@dataclass
class RunReport:
    suite: str
    records: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    schema: str = SCHEMA_TAG

    def add(self, name: str, ok: bool, measured=None, expected=None, tolerance=None,
            detail: str = "", skipped: bool = False):
        status = "skipped" if skipped else ("pass" if ok else "fail")
        self.records.append(CheckRecord(name=name, status=status, measured=measured,
                                        expected=expected, tolerance=tolerance, detail=detail))

    def extend_from_checks(self, checks, prefix: str = ""):
        for c in checks:
            self.records.append(CheckRecord(
                name=prefix + c["name"], status=c["status"],
                measured=c.get("measured"), expected=c.get("expected"),
                tolerance=c.get("tolerance"), detail=c.get("detail", "")))

    @property
    def overall(self) -> str:
        return "fail" if any(r.status == "fail" for r in self.records) else "pass"

    @property
    def counts(self):
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def to_json(self) -> str:
        payload = {
            "schema": self.schema,
            "suite": self.suite,
            "overall": self.overall,
            "records": [asdict(r) for r in self.records],
            "tables": self.tables,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "RunReport":
        payload = json.loads(text)
        if payload.get("schema") != SCHEMA_TAG:
            raise ValueError(f"unknown report schema {payload.get('schema')!r}")
        rep = RunReport(suite=payload["suite"], tables=payload.get("tables", {}))
        for r in payload["records"]:
            rep.records.append(CheckRecord(**r))
        return rep

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}", f"schema: {self.schema}"]
        width = max((len(r.name) for r in self.records), default=4)
        for r in self.records:
            extra = ""
            if r.measured is not None:
                extra += f"  measured={r.measured}"
            if r.expected is not None:
                extra += f"  expected={r.expected}"
            if r.tolerance is not None:
                extra += f"  tol={r.tolerance}"
            if r.detail:
                extra += f"  [{r.detail}]"
            lines.append(f"{r.name:<{width}}  {r.status:>7}{extra}")
        c = self.counts
        lines.append(f"overall: {self.overall} ({c['pass']} pass, {c['fail']} fail, "
                     f"{c['skipped']} skipped)")
        return "\n".join(lines) + "\n"
