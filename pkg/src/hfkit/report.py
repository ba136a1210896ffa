from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a brute-force checker: ``ok`` plus human-readable witnesses."""

    name: str
    ok: bool = True
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, witness: str) -> None:
        self.ok = False
        self.witnesses.append(witness)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.ok = self.ok and other.ok
        self.witnesses.extend(f"{other.name}: {w}" for w in other.witnesses)
        self.notes.extend(f"{other.name}: {n}" for n in other.notes)
        return self
