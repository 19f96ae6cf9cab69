"""Sections of the lcgalois text format.

A file is a sequence of sections. A section opens with a ``[kind]`` header and holds
``key=value`` fields separated by ``;``, on the header line and on the lines below it. A
``;``-separated chunk without ``=`` continues the previous field, so tables and per-element
actions may spread over several lines::

    [group] name=Z2; elements=e,a
    table=e,a
          a,e

Everything after ``#`` is a comment.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from lcgalois.exceptions import ParseError
from lcgalois.tools import invert_mapping
from lcgalois.typing import Perm

KINDS = (
    "group",
    "group-perm",
    "morphism",
    "chain",
    "gset",
    "eqmap",
    "presentation",
    "graph",
    "cover",
    "action",
    "simplicial",
)

_HEADER_RE = re.compile(r"^\s*\[([A-Za-z][A-Za-z-]*)\]")
_FIELD_RE = re.compile(r"^(\s*)([A-Za-z][A-Za-z0-9_]*)\s*=")
_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass
class Section:
    """One parsed section, with the location of each field for error messages."""

    kind: str
    source: str
    line: int
    fields: Dict[str, str] = field(default_factory=dict)
    positions: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    @property
    def name(self) -> str:
        """Return the declared name of the section."""
        return self.fields.get("name", "").strip()

    def error(self, message: str, key: Optional[str] = None) -> ParseError:
        """Return a parse error located at a field, or at the header."""
        line, column = self.positions.get(key, (self.line, 1)) if key else (self.line, 1)
        return ParseError(message, line, column, self.source)

    def has(self, key: str) -> bool:
        """Check if a field is present and not blank."""
        return bool(self.fields.get(key, "").strip())

    def require(self, key: str) -> str:
        """Return a field value.

        :raises ParseError: if the field is missing or blank.
        """
        if not self.has(key):
            raise self.error(f"[{self.kind}] needs {key}=")
        return self.fields[key].strip()

    def optional(self, key: str, default: str = "") -> str:
        """Return a field value, or a default."""
        return self.fields[key].strip() if self.has(key) else default

    def integer(self, key: str, default: Optional[int] = None) -> int:
        """Return a field as an integer.

        :raises ParseError: if the field is missing without default or not an integer.
        """
        if not self.has(key):
            if default is None:
                raise self.error(f"[{self.kind}] needs {key}=")
            return default
        value = self.fields[key].strip()
        try:
            return int(value)
        except ValueError:
            raise self.error(f"{key} must be an integer, got {value!r}", key) from None

    def names(self, key: str) -> List[str]:
        """Return a comma separated list."""
        return split_list(self.require(key))

    def rows(self, key: str) -> List[str]:
        """Return the ;-separated rows of a field, blank rows dropped."""
        return [row.strip() for row in self.require(key).split(";") if row.strip()]

    def lookup(self, key: str, token: str, names: Sequence[str], what: str) -> int:
        """Return the index of a name.

        :raises ParseError: naming the unknown name.
        """
        try:
            return list(names).index(token.strip())
        except ValueError:
            raise self.error(f"unknown {what} {token.strip()!r} in {key}", key) from None

    def pairs(
        self, key: str, left: Sequence[str], right: Sequence[str], what: Tuple[str, str]
    ) -> Dict[int, int]:
        """Parse ``x:y,...`` into a map of indices; every name must be known."""
        mapping: Dict[int, int] = {}
        for item in split_list(self.require(key)):
            if ":" not in item:
                raise self.error(f"expected x:y in {key}, got {item!r}", key)
            x, y = item.split(":", 1)
            index = self.lookup(key, x, left, what[0])
            if index in mapping:
                raise self.error(f"{x.strip()} is mapped twice in {key}", key)
            mapping[index] = self.lookup(key, y, right, what[1])
        return mapping

    def cycles(self, key: str, text: str, names: Sequence[str]) -> Perm:
        """Parse cycles over names, e.g. ``(y0 y1)(y2 y3)``; unnamed points are fixed."""
        position = invert_mapping(names)
        image = list(range(len(names)))
        if _CYCLE_RE.sub("", text).strip():
            raise self.error(f"not cycle notation: {text.strip()!r}", key)
        seen = set()
        for cycle in _CYCLE_RE.findall(text):
            points = []
            for token in cycle.split():
                if token not in position:
                    raise self.error(f"unknown point {token!r} in {key}", key)
                if token in seen:
                    raise self.error(f"{token} appears twice in {text.strip()!r}", key)
                seen.add(token)
                points.append(position[token])
            for k, point in enumerate(points):
                image[point] = points[(k + 1) % len(points)]
        return tuple(image)


def split_list(text: str) -> List[str]:
    """Split a comma separated list, dropping blanks."""
    return [item.strip() for item in text.split(",") if item.strip()]


def _strip_comment(text: str) -> str:
    """Drop everything from the first #."""
    return text.split("#", 1)[0]


def _add_chunks(section: Section, text: str, line: int, offset: int, current: List[str]) -> None:
    """Feed the ;-separated chunks of one line into a section."""
    column = offset
    for chunk in text.split(";"):
        match = _FIELD_RE.match(chunk)
        if match:
            key = match.group(2)
            if key in section.fields:
                raise ParseError(f"duplicate field {key}", line, column + 1, section.source)
            section.fields[key] = chunk[match.end() :]
            section.positions[key] = (line, column + match.end() + 1)
            current[:] = [key]
        elif chunk.strip():
            if not current:
                raise ParseError(
                    f"expected key=value, got {chunk.strip()!r}", line, column + 1, section.source
                )
            section.fields[current[0]] += ";" + chunk
        column += len(chunk) + 1


def read_sections(text: str, source: str = "") -> List[Section]:
    """Split a text into sections.

    :raises ParseError: for content outside a section, unknown kinds or duplicate fields.
    """
    sections: List[Section] = []
    current: List[str] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        header = _HEADER_RE.match(line)
        if header:
            kind = header.group(1).lower()
            if kind not in KINDS:
                raise ParseError(f"unknown section [{kind}]", number, header.start(1), source)
            sections.append(Section(kind, source, number))
            current = []
            _add_chunks(sections[-1], line[header.end() :], number, header.end(), current)
            continue
        if not sections:
            raise ParseError("content outside a section", number, 1, source)
        _add_chunks(sections[-1], line, number, 0, current)
    return sections
