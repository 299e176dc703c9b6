"""Certification stages and reports (JSON-serialisable, deterministic)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

CERTIFIED = "certified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"

EXIT_CODES = {CERTIFIED: 0, FAILED: 1, INCONCLUSIVE: 2}
EXIT_INPUT_ERROR = 3


@dataclass
class Stage:
    name: str
    status: str
    degree_bound: int | None = None
    witness: dict = field(default_factory=dict)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == CERTIFIED

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def from_dict(cls, d: dict) -> Stage:
        return cls(d["name"], d["status"], d.get("degree_bound"), d.get("witness", {}), d.get("note", ""))


@dataclass
class CertificationReport:
    command: str
    stages: list = field(default_factory=list)
    hilbert_prefix: list = field(default_factory=list)
    D: str | None = None
    antipode: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    timings: dict | None = None

    @property
    def status(self) -> str:
        if not self.stages:
            return INCONCLUSIVE
        statuses = [s.status for s in self.stages]
        if FAILED in statuses:
            return FAILED
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return CERTIFIED

    def add(self, stage: Stage) -> Stage:
        self.stages.append(stage)
        return stage

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        if self.timings is None:
            d.pop("timings")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> CertificationReport:
        return cls(
            d["command"],
            [Stage.from_dict(s) for s in d.get("stages", [])],
            list(d.get("hilbert_prefix", [])),
            d.get("D"),
            dict(d.get("antipode", {})),
            dict(d.get("info", {})),
            d.get("timings"),
        )

    @classmethod
    def from_json(cls, text: str) -> CertificationReport:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"overall: {self.status}"]
        for key in sorted(self.info):
            lines.append(f"{key}: {self.info[key]}")
        if self.hilbert_prefix:
            lines.append("hilbert series prefix: " + ", ".join(map(str, self.hilbert_prefix)))
        if self.D is not None:
            lines.append(f"D = {self.D}")
        for gen in sorted(self.antipode):
            lines.append(f"S({gen}) = {self.antipode[gen]}")
        for s in self.stages:
            bound = "" if s.degree_bound is None else f" [degree <= {s.degree_bound}]"
            lines.append(f"  {s.status:>12}  {s.name}{bound}")
            if s.note:
                lines.append(f"                {s.note}")
            if s.status != CERTIFIED and s.witness:
                for k in sorted(s.witness):
                    lines.append(f"                {k}: {s.witness[k]}")
        if self.timings:
            for k, v in self.timings.items():
                lines.append(f"time {k}: {v:.3f}s")
        return "\n".join(lines) + "\n"
