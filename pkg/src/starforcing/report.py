"""Structured verification records and their line-delimited serialization.

Every check in the package produces :class:`Record` objects.  A record is one
claim instance with the two sides that were compared, a verdict, and the bound
under which the verdict was reached.  Reports serialize to one JSON object per
line with sorted keys, so identical runs give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Iterator

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass(frozen=True)
class Record:
    claim: str
    instance: str
    lhs: Any
    rhs: Any
    verdict: str
    bound: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False, default=str)

    @classmethod
    def from_json(cls, line: str) -> "Record":
        return cls(**json.loads(line))

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL


@dataclass
class Report:
    """An ordered collection of records for one suite run."""

    suite: str
    records: list[Record] = field(default_factory=list)
    #: number of instances checked without emitting a record for each
    checked: int = 0

    def add(self, claim: str, instance: str, lhs: Any, rhs: Any, ok: bool, bound: str = "") -> Record:
        rec = Record(claim, instance, lhs, rhs, PASS if ok else FAIL, bound)
        self.records.append(rec)
        self.checked += 1
        return rec

    def note(self, claim: str, instance: str, lhs: Any = None, rhs: Any = None, bound: str = "") -> Record:
        rec = Record(claim, instance, lhs, rhs, INFO, bound)
        self.records.append(rec)
        return rec

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)
        self.checked += other.checked

    @property
    def violations(self) -> list[Record]:
        return [r for r in self.records if r.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return not self.violations

    def first_violation(self) -> Record | None:
        for r in self.records:
            if r.verdict == FAIL:
                return r
        return None

    def __iter__(self) -> Iterator[Record]:
        return iter(self.records)

    def lines(self) -> Iterable[str]:
        for r in self.records:
            yield r.to_json()

    def summary(self) -> str:
        n_fail = len(self.violations)
        status = "PASS" if n_fail == 0 else "FAIL"
        return f"# suite={self.suite} checked={self.checked} records={len(self.records)} violations={n_fail} status={status}"

    def render(self) -> str:
        return "\n".join([*self.lines(), self.summary()]) + "\n"
