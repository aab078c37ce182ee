from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class FreesemError(Exception):
    pass


class MalformedTable(FreesemError, ValueError):
    pass


class CapacityExceeded(FreesemError):
    pass


class EnumerationCapExceeded(CapacityExceeded):
    pass


class FormulaSyntaxError(FreesemError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DialectError(FreesemError, ValueError):
    pass


class ValuationNotUpClosed(FreesemError, ValueError):
    pass


class InvalidFrame(FreesemError, ValueError):
    pass


class UnknownName(FreesemError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InternalLawViolation(FreesemError):
    """A law that holds by construction failed; always a defect."""


@dataclass(frozen=True)
class Caps:
    max_morphisms: int = 64
    max_enum: int = 100_000


DEFAULT_CAPS = Caps()


@dataclass
class Report:
    """Outcome of a check: ok iff no violations were recorded.

    Each violation is a JSON-ready dict with a ``kind`` key plus the data
    needed to replay it against the library.
    """

    check: str
    violations: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, **data: Any) -> None:
        self.violations.append({"kind": kind, **data})

    def absorb(self, other: "Report") -> None:
        for v in other.violations:
            self.violations.append({"check": other.check, **v})

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "status": "pass" if self.ok else "fail",
            "violations": self.violations,
            "details": self.details,
        }
