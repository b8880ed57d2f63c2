from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """Answer of a decision procedure together with the evidence for it.

    A failed predicate always carries a witness that
    :mod:`yaqub.checkers` can re-verify without trusting the scanner.
    """

    predicate_id: str
    holds: bool
    witness: dict[str, Any] | None = None
    stats: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"predicate": self.predicate_id, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.stats:
            out["stats"] = self.stats
        return out
