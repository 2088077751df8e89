"""
lorentzkit/report.py

Check/Report records shared by the verifications and the CLI.
JSON output is deterministic: sorted keys, canonical scalar strings and no timing.
"""

import json
import time
from dataclasses import dataclass, field

import pandas as pd


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    computed: str
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "computed": self.computed, "pass": self.passed}


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    elapsed_s: float = 0.0
    _started: float = field(default_factory=time.perf_counter, repr=False, compare=False)

    def add(self, name: str, expected, computed, passed: bool | None = None) -> Check:
        if passed is None:
            passed = expected == computed
        check = Check(name, str(expected), str(computed), bool(passed))
        self.checks.append(check)
        return check

    def extend(self, checks):
        self.checks.extend(checks)

    def finish(self) -> "Report":
        self.elapsed_s = time.perf_counter() - self._started
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }
        if self.results:
            out["results"] = self.results
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [c.to_dict() for c in self.checks],
            columns=["name", "expected", "computed", "pass"],
        )
