"""Structured pass/fail records shared by the checking modules."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Optional


@dataclass
class CertificateReport:
    check: str
    passed: bool
    inputs: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError("a failed certificate must carry a witness")

    @classmethod
    def ok(cls, check: str, inputs: dict, **details) -> "CertificateReport":
        return cls(check, True, dict(inputs), details)

    @classmethod
    def failed(cls, check: str, inputs: dict, **witness) -> "CertificateReport":
        return cls(check, False, dict(inputs), witness)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CertificateReport":
        return cls(data["check"], data["passed"], dict(data.get("inputs", {})), dict(data.get("witness", {})))


@dataclass
class StructuralCaseReport:
    """Outcome of a structural case filter.

    ``candidates`` echoes every parameter tuple examined; ``satisfying`` is
    the first feasible tuple, present exactly when ``feasible`` is true.
    """

    case: str
    d: int
    k: int
    N: int
    feasible: bool
    candidates: list[dict[str, Any]] = field(default_factory=list)
    satisfying: Optional[dict[str, Any]] = None
    bounds: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.feasible != (self.satisfying is not None):
            raise ValueError("feasible reports carry exactly one satisfying tuple")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "StructuralCaseReport":
        return cls(**data)
