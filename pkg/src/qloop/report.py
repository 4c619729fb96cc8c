"""Structured pass/fail results for verification runs."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

__all__ = ["CheckItem", "CheckReport"]


@dataclass
class CheckItem:
    name: str
    ok: bool
    witness: str | None = None
    millis: float = 0.0
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_dict(self, stable: bool = False) -> dict:
        d: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        if not stable:
            d["millis"] = round(self.millis, 3)
        return d


@dataclass
class CheckReport:
    """Ordered collection of :class:`CheckItem` for one suite run."""

    suite: str
    params: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, name: str, ok: bool, witness: str | None = None, millis: float = 0.0,
            **detail) -> CheckItem:
        item = CheckItem(name, bool(ok), witness, millis, detail)
        self.checks.append(item)
        return item

    @contextmanager
    def timed(self, name: str):
        """Context yielding a dict; set ``ok``, ``witness`` and extra detail keys inside."""
        box: dict[str, Any] = {"ok": True, "witness": None}
        start = time.perf_counter()
        try:
            yield box
        finally:
            millis = (time.perf_counter() - start) * 1000.0
            ok = box.pop("ok")
            witness = box.pop("witness")
            self.add(name, ok, witness, millis, **box)

    def extend(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for c in other.checks:
            self.checks.append(CheckItem(prefix + c.name, c.ok, c.witness, c.millis, dict(c.detail)))
        return self

    def failures(self) -> list[CheckItem]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self, stable: bool = False) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": [c.to_dict(stable) for c in self.checks],
        }

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.to_dict(stable), indent=2, sort_keys=False, default=str)

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"suite: {self.suite}  params: {self.params}"]
        for c in self.checks:
            line = f"  {c.name:<{width}}  {c.status.upper():4}  {c.millis:9.1f} ms"
            if c.witness:
                line += f"  witness: {c.witness}"
            lines.append(line)
        n_ok = sum(c.ok for c in self.checks)
        lines.append(f"  {n_ok}/{len(self.checks)} checks passed")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()
