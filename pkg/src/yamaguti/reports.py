"""Shared pass/fail report type used by all the structure checkers.

A failing report always carries a witness: a small dict naming the
violated identity and the (1-based) basis tuple where it broke.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "CheckReport":
        return cls(True, None)

    @classmethod
    def failed(cls, **witness) -> "CheckReport":
        return cls(False, witness)
