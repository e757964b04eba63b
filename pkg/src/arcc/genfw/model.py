from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from arcc.diagnostics import Location

KINDS = ("component", "behavior", "type")

# which optional fields each kind requires (True) or forbids (False)
FIELD_RULES = {
    "component": {"platform": True, "language": False, "rts": True, "entrypoint": True},
    "behavior": {"platform": False, "language": True, "rts": True, "entrypoint": False},
    "type": {"platform": True, "language": False, "rts": False, "entrypoint": False},
}


@dataclass(frozen=True)
class GeneratorModel:
    name: str
    kind: str
    platform: Optional[str] = None
    language: Optional[str] = None
    rts: Optional[str] = None
    entrypoint: Optional[str] = None
    requires: tuple[str, ...] = ()
    loc: Optional[Location] = field(default=None, compare=False, repr=False)

    @property
    def emitter(self) -> str:
        """Name of the built-in emitter this model selects."""
        if self.kind == "behavior":
            return f"behavior:{self.language}@{self.rts}"
        return f"{self.kind}:{self.platform}"
