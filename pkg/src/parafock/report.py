from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from .carrier import VectorExpr, format_rational

Value = Union[VectorExpr, Fraction, int, float, str, None]


@dataclass(frozen=True)
class Failure:
    context: str
    expected: Value
    actual: Value

    def to_dict(self) -> dict[str, Any]:
        return {
            "context": self.context,
            "expected": encode_value(self.expected),
            "actual": encode_value(self.actual),
        }


@dataclass
class Report:
    """Outcome of one verification suite. It passes iff ``failures`` is empty."""

    suite: str
    p: int
    max_m: int | None
    checks_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, context: str, expected: Value = None, actual: Value = None) -> bool:
        self.checks_run += 1
        if not ok:
            self.failures.append(Failure(context, expected, actual))
        return ok

    def merge(self, other: "Report") -> None:
        self.checks_run += other.checks_run
        self.failures.extend(other.failures)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        window = "" if self.max_m is None else f", max_m={self.max_m}"
        line = f"{status} {self.suite} (p={self.p}{window}): {self.checks_run} checks, {len(self.failures)} failures"
        if self.failures:
            line += f"; first: {self.failures[0].context}"
        return line

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "suite": self.suite,
            "p": self.p,
            "max_m": self.max_m,
            "checks_run": self.checks_run,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
        }
        if self.note:
            out["note"] = self.note
        return out


def encode_value(value: Value) -> Any:
    if isinstance(value, VectorExpr):
        return {
            "text": str(value),
            "terms": [
                {"m": idx.m, "n": idx.n, "tag": str(idx.tag), "coeff": format_rational(c)}
                for idx, c in value.items()
            ],
        }
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return format_rational(value)
    return value
