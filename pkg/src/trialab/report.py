from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .linalg import format_scalar


@dataclass(frozen=True)
class Violation:
    """One failed identity instance: which axiom, at which basis tuple, by how much."""

    axiom: str
    witness: tuple
    discrepancy: tuple
    labels: tuple = field(default=(), compare=False)

    def describe(self) -> str:
        names = " ".join(self.labels) if self.labels else ""
        disc = " ".join(format_scalar(c) for c in self.discrepancy)
        wit = "(" + ",".join(str(i) for i in self.witness) + ")"
        return f"{self.axiom}\t{wit}\t[{names}]\t[{disc}]"

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": list(self.witness),
            "labels": list(self.labels),
            "discrepancy": [format_scalar(c) for c in self.discrepancy],
        }


@dataclass(frozen=True)
class ViolationReport:
    violations: tuple = ()

    @classmethod
    def of(cls, items: Iterable[Violation]) -> ViolationReport:
        return cls(tuple(sorted(items, key=lambda v: (v.axiom, v.witness))))

    @classmethod
    def merge(cls, *reports: ViolationReport) -> ViolationReport:
        return cls.of(v for r in reports for v in r.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}

    def witnesses(self, axiom: str | None = None) -> list:
        return [v.witness for v in self.violations if axiom is None or v.axiom == axiom]

    def prefixed(self, prefix: str) -> ViolationReport:
        return ViolationReport(tuple(
            Violation(prefix + v.axiom, v.witness, v.discrepancy, v.labels) for v in self.violations
        ))

    def filter(self, pred) -> ViolationReport:
        return ViolationReport(tuple(v for v in self.violations if pred(v)))

    def to_json(self) -> dict:
        return {"schema": "trialab/report@1", "ok": self.ok,
                "violations": [v.to_json() for v in self.violations]}

    def lines(self) -> list:
        if self.ok:
            return ["OK\t0 violations"]
        return [f"VIOLATION\t{v.describe()}" for v in self.violations] + [
            f"FAIL\t{len(self.violations)} violations"
        ]
