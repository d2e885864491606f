"""Three-valued verdicts shared by every predicate that may run on a window."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Verdict(str, enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Check:
    """Outcome of a structural predicate.

    ``witness`` is only set for refutations (and for the occasional
    positive certificate). ``known`` records a fact guaranteed by theory
    for the backend, independently of what the bounded search found.
    """

    verdict: Verdict
    witness: tuple | None = None
    note: str = ""
    known: bool | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool | None:
        """True when verified or known, False when refuted, else None."""
        if self.verdict is Verdict.REFUTED:
            return False
        if self.verdict is Verdict.VERIFIED or self.known:
            return True
        return None

    def to_dict(self, labels=None) -> dict:
        wit = self.witness
        if wit is not None and labels is not None:
            wit = [labels[i] if isinstance(i, int) else i for i in wit]
        out = {"verdict": self.verdict.value, "witness": list(wit) if wit is not None else None}
        if self.note:
            out["note"] = self.note
        if self.known is not None:
            out["known"] = self.known
        if self.extra:
            out.update(self.extra)
        return out


def conjunction(*checks: Check) -> Verdict:
    """Three-valued AND over ``Check.holds``."""
    states = [c.holds for c in checks]
    if any(s is False for s in states):
        return Verdict.REFUTED
    if all(s is True for s in states):
        return Verdict.VERIFIED
    return Verdict.UNKNOWN
