"""Campaign results."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Mismatch:
    input: dict
    expected: str
    got: str

    def to_dict(self) -> dict:
        return {"input": self.input, "expected": self.expected, "got": self.got}


@dataclass
class VerifyReport:
    """A campaign passes iff it has no mismatches and no structural failures.
    Budget exhaustions are recorded but are not failures."""

    kind: str
    instances_run: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    structural_failures: list[str] = field(default_factory=list)
    budget_exhaustions: list[dict] = field(default_factory=list)
    strata: dict[str, dict] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.structural_failures

    def count(self, stratum: str, key: str, by: int = 1) -> None:
        row = self.strata.setdefault(stratum, {"instances": 0, "mismatches": 0, "exhausted": 0})
        row[key] = row.get(key, 0) + by

    def merge(self, other: "VerifyReport") -> "VerifyReport":
        self.instances_run += other.instances_run
        self.mismatches += other.mismatches
        self.structural_failures += other.structural_failures
        self.budget_exhaustions += other.budget_exhaustions
        for name, row in other.strata.items():
            for key, value in row.items():
                self.count(name, key, value)
        self.seconds += other.seconds
        return self

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "instances_run": self.instances_run,
            "mismatches": [m.to_dict() for m in self.mismatches],
            "structural_failures": list(self.structural_failures),
            "budget_exhaustions": list(self.budget_exhaustions),
            "strata": self.strata,
            "seconds": round(self.seconds, 3),
        }

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return (
            f"{state} {self.kind}: {self.instances_run} instances, "
            f"{len(self.mismatches)} mismatches, {len(self.structural_failures)} structural failures, "
            f"{len(self.budget_exhaustions)} budget exhaustions ({self.seconds:.1f}s)"
        )
