"""Typing assistance for lcgalois."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

# A permutation of {0, ..., n-1}, stored as its image tuple: p[i] is the image of i.
Perm = Tuple[int, ...]

# A partition of an ordered carrier into blocks of indices, blocks ordered by least element.
Partition = List[Tuple[int, ...]]

# A finite map between carriers, stored as its image tuple.
Mapping = Tuple[int, ...]


@dataclass(frozen=True)
class Verdict:
    """The outcome of a validator.

    :ivar ok: Whether every checked invariant holds.
    :ivar diagnostics: Human readable descriptions of each violation, in check order.
    :ivar witness: Structured data locating the first violation, or supporting a positive answer.
    :ivar value: The validated object, when the validator produces one.
    """

    ok: bool
    diagnostics: Tuple[str, ...] = ()
    witness: Any = None
    value: Any = None

    def __bool__(self) -> bool:
        """Return the verdict as a boolean."""
        return self.ok

    def as_dict(self) -> Dict[str, Any]:
        """Return the serializable part of the verdict."""
        return {"ok": self.ok, "diagnostics": list(self.diagnostics), "witness": self.witness}


@dataclass
class DiagnosticCollector:
    """Collect diagnostics while a validator walks its checks."""

    diagnostics: List[str] = field(default_factory=list)
    witness: Any = None

    def fail(self, message: str, witness: Any = None) -> None:
        """Record a violation, keeping the witness of the first one."""
        if not self.diagnostics and witness is not None:
            self.witness = witness
        self.diagnostics.append(message)

    def verdict(self, value: Any = None) -> Verdict:
        """Turn the collected diagnostics into a verdict."""
        ok = not self.diagnostics
        return Verdict(
            ok=ok,
            diagnostics=tuple(self.diagnostics),
            witness=self.witness,
            value=value if ok else None,
        )
