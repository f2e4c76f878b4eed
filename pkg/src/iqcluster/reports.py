"""Structured pass/fail records shared by all verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    """One verified identity: name, parameters, outcome, witness on failure.

    ``ms`` is wall-clock milliseconds; it is excluded from equality so two
    runs of a deterministic suite compare equal.
    """

    check: str
    n: int
    params: dict
    passed: bool
    witness: str | None = None
    ms: float = field(default=0.0, compare=False)

    def to_json(self) -> str:
        doc = {
            "check": self.check,
            "n": self.n,
            "params": self.params,
            "pass": self.passed,
        }
        if self.witness is not None:
            doc["witness"] = self.witness
        doc["ms"] = round(self.ms, 3)
        return json.dumps(doc, sort_keys=True)


def all_passed(reports: list[Report]) -> bool:
    return all(r.passed for r in reports)


def failures(reports: list[Report]) -> list[Report]:
    return [r for r in reports if not r.passed]
