# Copyright (2025) Bytedance Ltd. and/or its affiliates

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     https://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

PASS = "pass"
MISMATCH = "mismatch"
UNCHECKED = "unchecked"
ERROR = "error"
STATUSES = (PASS, MISMATCH, UNCHECKED, ERROR)


@dataclass(frozen=True)
class BenchCase:
    """One evaluation: ``expression`` in H^degree(space; coeff), compared with ``expected``.

    ``expected`` is in canonical coordinates of the target group; with
    ``up_to_sign`` the negated value is accepted too.
    """

    space: str
    coeff: str
    degree: int
    expression: str
    expected: Optional[Tuple[int, ...]] = None
    up_to_sign: bool = False
    source: str = "DERIVED"
    name: str = ""

    def __post_init__(self):
        if self.expected is not None:
            object.__setattr__(self, "expected", tuple(int(v) for v in self.expected))
        if not self.name:
            object.__setattr__(self, "name", f"{self.space} {self.coeff} H^{self.degree}: {self.expression}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "space": self.space,
            "coeff": self.coeff,
            "degree": self.degree,
            "expression": self.expression,
            "expected": list(self.expected) if self.expected is not None else None,
            "up_to_sign": self.up_to_sign,
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BenchCase":
        try:
            expected = data.get("expected")
            return cls(
                space=str(data["space"]),
                coeff=str(data.get("coeff", "Z")),
                degree=int(data["degree"]),
                expression=str(data["expression"]),
                expected=tuple(expected) if expected is not None else None,
                up_to_sign=bool(data.get("up_to_sign", False)),
                source=str(data.get("source", "DERIVED")),
                name=str(data.get("name", "")),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"Malformed bench case {data!r}: {e}")


@dataclass(frozen=True)
class CaseResult:
    case: BenchCase
    status: str
    value: Optional[Tuple[int, ...]] = None
    group: str = ""
    elapsed: float = 0.0
    message: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case.to_dict(),
            "status": self.status,
            "value": list(self.value) if self.value is not None else None,
            "group": self.group,
            "elapsed": self.elapsed,
            "message": self.message,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CaseResult":
        value = data.get("value")
        status = data["status"]
        if status not in STATUSES:
            raise ValueError(f"Unknown status {status!r}")
        return cls(
            case=BenchCase.from_dict(data["case"]),
            status=status,
            value=tuple(value) if value is not None else None,
            group=data.get("group", ""),
            elapsed=float(data.get("elapsed", 0.0)),
            message=data.get("message", ""),
        )


@dataclass(frozen=True)
class RunReport:
    results: Tuple[CaseResult, ...]

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def ok(self) -> bool:
        return self.count(MISMATCH) == 0 and self.count(ERROR) == 0

    @property
    def total_elapsed(self) -> float:
        return sum(r.elapsed for r in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "summary": {s: self.count(s) for s in STATUSES},
            "results": [r.to_dict() for r in self.results],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunReport":
        return cls(tuple(CaseResult.from_dict(r) for r in data.get("results", [])))

    def render(self) -> str:
        lines: List[str] = []
        width = max((len(r.case.name) for r in self.results), default=0)
        for r in self.results:
            value = "[" + ", ".join(str(v) for v in r.value) + "]" if r.value is not None else "-"
            line = f"{r.status.upper():9} {r.case.name.ljust(width)}  {value:10} {r.elapsed * 1000:8.1f} ms"
            if r.message:
                line += f"  ({r.message})"
            lines.append(line)
        summary = ", ".join(f"{self.count(s)} {s}" for s in STATUSES)
        lines.append(f"{len(self.results)} cases: {summary}; total {self.total_elapsed:.2f} s")
        return "\n".join(lines)
