"""Pass/fail records with machine-readable witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class InternalConsistencyError(AssertionError):
    """An identity that the mathematics guarantees did not hold: an engine bug."""


@dataclass(frozen=True)
class Verdict:
    ok: bool
    law: str | None = None
    witness: Any = None
    detail: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls, law: str | None = None, **extra) -> "Verdict":
        return cls(True, law, extra=extra)

    @classmethod
    def failed(cls, law: str, witness=None, detail: str = "") -> "Verdict":
        return cls(False, law, witness, detail)
