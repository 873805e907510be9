"""Verification reports shared by the library and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class Report:
    theorem: str
    instance: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def __bool__(self) -> bool:
        return bool(self.passed)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "status": self.status,
            "details": jsonable(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def line(self) -> str:
        return f"{self.status}  {self.theorem}: {self.instance}"


def jsonable(obj):
    """Convert exact values to JSON-friendly ones (rationals become "p/q")."""
    from .exact_linalg import format_rational

    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if hasattr(obj, "item"):
        return obj.item()
    return str(obj)
