"""One-line-per-case check reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class Report:
    check: str
    params: dict
    status: str
    details: dict = field(default_factory=dict)
    counterexample: object = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIP):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.counterexample is None:
            raise ValueError(f"{self.check}: FAIL report without a counterexample")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        out = {"check": self.check, "params": self.params, "status": self.status, "details": self.details}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=str, separators=(",", ":"))

    def to_text(self) -> str:
        params = " ".join(f"{k}={_flat(v)}" for k, v in self.params.items())
        details = " ".join(f"{k}={_flat(v)}" for k, v in self.details.items())
        line = f"{self.status} {self.check} {params}".rstrip()
        if details:
            line += f" | {details}"
        if self.counterexample is not None:
            line += f" | counterexample={_flat(self.counterexample)}"
        return line

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "structured" else self.to_text()


def _flat(v) -> str:
    if isinstance(v, str):
        return v if " " not in v else json.dumps(v)
    return json.dumps(v, sort_keys=True, default=str, separators=(",", ":"))


def verdict(flag: bool) -> str:
    return PASS if flag else FAIL
