"""Machine-readable check reports (JSON) with a plain-text table view."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

TOOL_VERSION = "0.1.0"


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


@dataclass
class Check:
    name: str
    verdict: str  # "pass" | "fail"
    witness: Any = None
    details: Any = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        d = {"name": self.name, "verdict": self.verdict, "details": _jsonable(self.details)}
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        return d


def check(name: str, ok: bool, witness=None, **details) -> Check:
    return Check(name, "pass" if ok else "fail", witness, details)


def from_diagnostic(d, labels=None, prefix: str = "") -> Check:
    wit = d.witness
    if wit is not None and labels is not None:
        wit = [labels[i] if isinstance(i, int) and 0 <= i < len(labels) else i for i in wit]
    details = {"message": d.details} if d.details else {}
    return Check(prefix + d.name, "pass" if d.ok else "fail", wit, details)


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    input_digest: str = ""
    tool_version: str = TOOL_VERSION
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, c: Check) -> Check:
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.verdict, c.witness, c.details))

    def find(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "input_digest": self.input_digest,
            "title": self.title,
            "checks": [c.to_dict() for c in self.checks],
            "summary": _jsonable(self.summary),
            "timings": _jsonable(self.timings),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        checks = [Check(c["name"], c["verdict"], c.get("witness"), c.get("details", {})) for c in d["checks"]]
        return cls(d.get("title", ""), checks, d.get("summary", {}), d.get("input_digest", ""),
                   d.get("tool_version", TOOL_VERSION), d.get("timings", {}))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def digest(self) -> str:
        """Hash of the deterministic part (timings excluded)."""
        d = self.to_dict()
        d.pop("timings")
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()

    def to_text(self) -> str:
        rows = [(c.name, c.verdict.upper(), "" if c.witness is None else json.dumps(_jsonable(c.witness), ensure_ascii=False))
                for c in self.checks]
        w0 = max([len(r[0]) for r in rows] + [5])
        lines = []
        if self.title:
            lines.append(self.title)
            lines.append("=" * len(self.title))
        for name, verdict, wit in rows:
            lines.append(f"{name:<{w0}}  {verdict:<4}  {wit}".rstrip())
        if self.summary:
            for k, v in self.summary.items():
                lines.append(f"  {k}: {json.dumps(_jsonable(v), ensure_ascii=False)}")
        return "\n".join(lines)


def digest_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
