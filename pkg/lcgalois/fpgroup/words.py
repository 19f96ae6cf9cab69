"""Words over named generators and finitely presented groups."""

import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from lcgalois.exceptions import InvalidParam, ParseError

Letter = Tuple[str, int]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_.]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class Word:
    """A word: a sequence of (generator, +1 or -1) letters."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        """Check that every exponent is a unit."""
        for generator, exponent in self.letters:
            if exponent not in (1, -1):
                raise InvalidParam(f"letter {generator}^{exponent} is not a unit power")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse whitespace separated tokens: ``a``, ``a^-1``, ``a^3``.

        "1" and the empty string denote the empty word.

        :raises ParseError: naming the column of the offending token.
        """
        letters: List[Letter] = []
        for match in re.finditer(r"\S+", text):
            token = match.group(0)
            if token == "1":
                continue
            parsed = _TOKEN.match(token)
            if not parsed:
                raise ParseError(f"bad word token {token!r}", column=match.start() + 1)
            power = int(parsed.group(2)) if parsed.group(2) is not None else 1
            sign = 1 if power > 0 else -1
            letters.extend([(parsed.group(1), sign)] * abs(power))
        return cls(tuple(letters))

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "Word":
        """Build a word from letters."""
        return cls(tuple((str(g), int(e)) for g, e in letters))

    def __len__(self) -> int:
        """Return the number of letters."""
        return len(self.letters)

    def __iter__(self):
        """Iterate over the letters."""
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        """Concatenate two words."""
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        """Render the word as tokens; the empty word renders as "1"."""
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def inverse(self) -> "Word":
        """Return the inverse word."""
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def power(self, k: int) -> "Word":
        """Return the word repeated k times; negative k repeats the inverse."""
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def generators(self) -> Tuple[str, ...]:
        """Return the generators occurring in the word, in order of first occurrence."""
        seen: Dict[str, None] = {}
        for generator, _ in self.letters:
            seen.setdefault(generator)
        return tuple(seen)

    def exponent_sum(self, generator: str) -> int:
        """Return the total exponent of a generator."""
        return sum(e for g, e in self.letters if g == generator)

    def drop(self, generators: Iterable[str]) -> "Word":
        """Return the word with some generators deleted."""
        dropped = set(generators)
        return Word(tuple(letter for letter in self.letters if letter[0] not in dropped))

    def substitute(self, images: Mapping[str, "Word"]) -> "Word":
        """Replace generators by words; unmapped generators stay."""
        letters: List[Letter] = []
        for generator, exponent in self.letters:
            if generator in images:
                image = images[generator] if exponent == 1 else images[generator].inverse()
                letters.extend(image.letters)
            else:
                letters.append((generator, exponent))
        return Word(tuple(letters))

    def evaluate_in(self, group, images: Mapping[str, int]) -> int:
        """Multiply the images of the letters left to right in a finite group.

        :raises InvalidParam: on a generator without an image.
        """
        result = 0
        for generator, exponent in self.letters:
            if generator not in images:
                raise InvalidParam(f"unknown generator {generator!r}")
            element = images[generator] if exponent == 1 else group.inv(images[generator])
            result = group.mul(result, element)
        return result


def free_reduce(word: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    stack: List[Letter] = []
    for generator, exponent in word.letters:
        if stack and stack[-1] == (generator, -exponent):
            stack.pop()
        else:
            stack.append((generator, exponent))
    return Word(tuple(stack))


@dataclass(frozen=True)
class Presentation:
    """Generators and relators; relators are stored freely reduced, empty ones dropped."""

    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = field(default_factory=tuple)
    name: str = "P"

    def __post_init__(self) -> None:
        """Normalize relators and check generator names."""
        generators = tuple(self.generators)
        if len(set(generators)) != len(generators):
            raise InvalidParam("generator names must be unique")
        for generator in generators:
            if not _TOKEN.match(generator) or "^" in generator:
                raise InvalidParam(f"bad generator name {generator!r}")

        known = set(generators)
        relators = []
        for relator in self.relators:
            unknown = [g for g in relator.generators() if g not in known]
            if unknown:
                raise InvalidParam(f"relator {relator} uses unknown generator {unknown[0]!r}")
            reduced = free_reduce(relator)
            if reduced.letters:
                relators.append(reduced)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relators", tuple(relators))

    @property
    def rank(self) -> int:
        """Return the number of generators."""
        return len(self.generators)

    @classmethod
    def free(cls, generators: Sequence[str], name: str = "F") -> "Presentation":
        """Return the free group on some generators."""
        return cls(tuple(generators), (), name=name)

    @classmethod
    def parse(cls, generators: str, relators: str, name: str = "P") -> "Presentation":
        """Parse comma separated generators and comma separated relator words."""
        names = tuple(g.strip() for g in generators.split(",") if g.strip())
        words = tuple(Word.parse(r) for r in relators.split(",") if r.strip())
        return cls(names, words, name=name)

    def rename(self, renaming: Mapping[str, str]) -> "Presentation":
        """Rename generators; unmapped names stay."""
        names = tuple(renaming.get(g, g) for g in self.generators)
        relators = tuple(
            Word(tuple((renaming.get(g, g), e) for g, e in relator.letters))
            for relator in self.relators
        )
        return Presentation(names, relators, name=self.name)

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form."""
        return {
            "generators": list(self.generators),
            "relators": [str(r) for r in self.relators],
        }

    def __str__(self) -> str:
        """Render as <gens | rels>."""
        return f"<{', '.join(self.generators)} | {', '.join(str(r) for r in self.relators)}>"


def cayley_presentation(group) -> Presentation:
    """Present a finite group on its generating set.

    Generator g{k} stands for the k-th element of ``group.generating_set()``. Each element x
    has a shortest word w_x; the relators are w_x s w_{xs}^-1 for every x and generator s.
    """
    generators = group.generating_set()
    names = tuple(f"g{k}" for k in range(len(generators)))
    words = {
        element: Word(tuple((names[p], 1) for p in positions))
        for element, positions in group.words(generators).items()
    }
    relators = []
    for element in range(len(group)):
        for position, generator in enumerate(generators):
            step = Word(((names[position], 1),))
            relator = words[element] * step * words[group.mul(element, generator)].inverse()
            relators.append(relator)
    return Presentation(names, tuple(relators), name=group.name)
