"""Actions of finitely presented groups on small finite sets.

An action assigns a permutation of {0, ..., n-1} to every generator. Words act diagrammatically:
the word ``a b`` moves a point by a first and then by b.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.exceptions import InvalidParam
from lcgalois.fpgroup.words import Presentation, Word
from lcgalois.tools import (
    compose,
    identity_perm,
    invert,
    is_identity,
    perm_orbits,
    perm_to_cycles,
)
from lcgalois.typing import Perm

logger = structlog.getLogger("lcgalois.fpgroup")


@dataclass(frozen=True)
class FiniteAction:
    """A permutation of {0, ..., degree - 1} per generator, in generator order."""

    generators: Tuple[str, ...]
    degree: int
    images: Tuple[Perm, ...]

    def __post_init__(self) -> None:
        """Check the shape of the images."""
        if len(self.images) != len(self.generators):
            raise InvalidParam("an action needs one permutation per generator")
        for generator, image in zip(self.generators, self.images):
            if sorted(image) != list(range(self.degree)):
                raise InvalidParam(f"image of {generator} is not a permutation of the fiber")

    def __getitem__(self, generator: str) -> Perm:
        """Return the image of a generator."""
        try:
            return self.images[self.generators.index(generator)]
        except ValueError:
            raise InvalidParam(f"unknown generator {generator!r}") from None

    def orbits(self) -> List[Tuple[int, ...]]:
        """Return the orbits on the fiber."""
        return perm_orbits(self.images, self.degree)

    def is_transitive(self) -> bool:
        """Check if the action has exactly one orbit."""
        return self.degree > 0 and len(self.orbits()) == 1

    def restrict(self, orbit: Sequence[int]) -> "FiniteAction":
        """Restrict to an invariant subset, relabelled by its sorted order."""
        points = sorted(orbit)
        position = {p: k for k, p in enumerate(points)}
        images = tuple(tuple(position[image[p]] for p in points) for image in self.images)
        return FiniteAction(self.generators, len(points), images)

    def relabel(self, order: Sequence[int]) -> "FiniteAction":
        """Rename point order[k] to k."""
        position = {p: k for k, p in enumerate(order)}
        images = tuple(tuple(position[image[p]] for p in order) for image in self.images)
        return FiniteAction(self.generators, self.degree, images)

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form with 1-based cycle notation."""
        return {
            "degree": self.degree,
            "images": {g: perm_to_cycles(p) for g, p in zip(self.generators, self.images)},
            "transitive": self.is_transitive(),
        }


def evaluate(presentation: Presentation, action: FiniteAction, word: Word) -> Perm:
    """Multiply the images of the letters of a word, first letter acting first.

    :raises InvalidParam: if the word uses a generator outside the presentation.
    """
    result = identity_perm(action.degree)
    for generator, exponent in word:
        if generator not in presentation.generators:
            raise InvalidParam(f"unknown generator {generator!r}")
        image = action[generator]
        result = compose(result, image if exponent == 1 else invert(image))
    return result


def satisfies(presentation: Presentation, action: FiniteAction) -> bool:
    """Check that every relator acts as the identity."""
    return all(is_identity(evaluate(presentation, action, r)) for r in presentation.relators)


def check_action_budget(
    presentation: Presentation, degree: int, budget: Optional[GaloisBudgetConfig] = None
) -> None:
    """Refuse an enumeration whose candidate space exceeds the configured budget.

    :raises BudgetExceeded: if the degree or |generators| * degree! is over its limit.
    """
    budget = resolve_budget(budget)
    candidates = presentation.rank * factorial(degree)
    if not (
        budget.allows("MAX_DEGREE", degree) and budget.allows("ACTION_CANDIDATES", candidates)
    ):
        logger.bind(
            presentation=presentation.name, degree=degree, candidates=candidates
        ).warning("action_enumeration_refused")
    budget.enforce("MAX_DEGREE", degree, f"actions of degree {degree}")
    budget.enforce("ACTION_CANDIDATES", candidates, f"actions of {presentation.name}")


class _Relator:
    """A relator as generator positions, for fast evaluation during the search."""

    def __init__(self, word: Word, position: Dict[str, int]) -> None:
        """Translate generator names to positions."""
        self.letters = [(position[g], e) for g, e in word]
        counts = Counter(p for p, _ in self.letters)
        self.slots = set(counts)
        self.single = {p for p, count in counts.items() if count == 1}

    def evaluate(self, assigned: List[Optional[Perm]], degree: int) -> Perm:
        """Evaluate with every slot assigned."""
        result = identity_perm(degree)
        for slot, exponent in self.letters:
            image = assigned[slot]
            result = compose(result, image if exponent == 1 else invert(image))
        return result

    def solve(self, assigned: List[Optional[Perm]], slot: int, degree: int) -> Perm:
        """Solve U x^e V = 1 for the one unassigned slot x."""
        cut = next(k for k, (s, _) in enumerate(self.letters) if s == slot)
        exponent = self.letters[cut][1]
        before = identity_perm(degree)
        for s, e in self.letters[:cut]:
            before = compose(before, assigned[s] if e == 1 else invert(assigned[s]))
        after = identity_perm(degree)
        for s, e in self.letters[cut + 1 :]:
            after = compose(after, assigned[s] if e == 1 else invert(assigned[s]))
        solution = compose(invert(before), invert(after))
        return solution if exponent == 1 else invert(solution)


def _search(
    relators: List[_Relator], assigned: List[Optional[Perm]], degree: int
) -> Iterator[Tuple[Perm, ...]]:
    """Assign the remaining generators, propagating relators with one free generator."""
    for relator in relators:
        free = [s for s in relator.slots if assigned[s] is None]
        if not free and not is_identity(relator.evaluate(assigned, degree)):
            return

    forced = None
    for relator in relators:
        free = [s for s in relator.slots if assigned[s] is None]
        if len(free) == 1 and free[0] in relator.single:
            forced = (free[0], relator.solve(assigned, free[0], degree))
            break

    if forced is not None:
        slot, value = forced
        assigned[slot] = value
        yield from _search(relators, assigned, degree)
        assigned[slot] = None
        return

    if all(image is not None for image in assigned):
        yield tuple(assigned)
        return

    slot = assigned.index(None)
    for candidate in permutations(range(degree)):
        assigned[slot] = candidate
        yield from _search(relators, assigned, degree)
    assigned[slot] = None


def enumerate_actions(
    presentation: Presentation, degree: int, budget: Optional[GaloisBudgetConfig] = None
) -> List[FiniteAction]:
    """Return every action of the presentation on {0, ..., degree - 1}, lexicographically.

    Every tuple of permutations satisfying all relators appears exactly once.

    :raises InvalidParam: if the degree is not positive.
    :raises BudgetExceeded: if the candidate space is over the configured budget.
    """
    if degree < 1:
        raise InvalidParam("the degree must be at least 1")
    check_action_budget(presentation, degree, budget)

    position = {g: k for k, g in enumerate(presentation.generators)}
    relators = [_Relator(r, position) for r in presentation.relators]
    assigned: List[Optional[Perm]] = [None] * presentation.rank
    found = sorted(_search(relators, assigned, degree))
    actions = [FiniteAction(presentation.generators, degree, images) for images in found]
    logger.bind(
        presentation=presentation.name,
        degree=degree,
        actions=len(actions),
        transitive=sum(a.is_transitive() for a in actions),
    ).debug("actions_enumerated")
    return actions


def _transitive_form(action: FiniteAction) -> Tuple[Perm, ...]:
    """Return the least relabelling of a transitive action over all breadth-first labellings."""
    best = None
    for start in range(action.degree):
        order = [start]
        seen = {start}
        for point in order:
            for image in action.images:
                if image[point] not in seen:
                    seen.add(image[point])
                    order.append(image[point])
        form = action.relabel(order).images
        if best is None or form < best:
            best = form
    return best


def canonical_form(action: FiniteAction) -> FiniteAction:
    """Return a representative of the action's class under relabelling of the fiber.

    Two actions are conjugate by a permutation of the fiber iff their canonical forms agree.
    Orbits are put in canonical form one by one, sorted and laid out consecutively.
    """
    forms = sorted(
        (len(orbit), _transitive_form(action.restrict(orbit))) for orbit in action.orbits()
    )
    images: List[List[int]] = [[] for _ in action.generators]
    offset = 0
    for size, form in forms:
        for k, image in enumerate(form):
            images[k].extend(offset + point for point in image)
        offset += size
    return FiniteAction(action.generators, action.degree, tuple(tuple(i) for i in images))


def action_classes(actions: Sequence[FiniteAction]) -> List[FiniteAction]:
    """Return the distinct canonical forms among some actions, sorted."""
    forms: Dict[Tuple[int, Tuple[Perm, ...]], FiniteAction] = {}
    for action in actions:
        form = canonical_form(action)
        forms.setdefault((form.degree, form.images), form)
    return [forms[key] for key in sorted(forms)]


def transitive_action_classes(
    presentation: Presentation, degree: int, budget: Optional[GaloisBudgetConfig] = None
) -> List[FiniteAction]:
    """Return one canonical representative per isomorphism class of transitive actions."""
    transitive = [a for a in enumerate_actions(presentation, degree, budget) if a.is_transitive()]
    return action_classes(transitive)


@dataclass(frozen=True)
class QuotientSpectrum:
    """Counts of actions per degree 1..n.

    Labelled counts and counts of classes under relabelling are kept apart.
    """

    degrees: Tuple[int, ...]
    all: Tuple[int, ...]
    transitive: Tuple[int, ...]
    all_classes: Tuple[int, ...]
    transitive_classes: Tuple[int, ...]

    def matches(self, other: "QuotientSpectrum") -> bool:
        """Check that two spectra agree on their common degrees."""
        common = min(len(self.degrees), len(other.degrees))
        return all(
            getattr(self, name)[:common] == getattr(other, name)[:common]
            for name in ("all", "transitive", "all_classes", "transitive_classes")
        )

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form."""
        return {
            "degrees": list(self.degrees),
            "all": list(self.all),
            "transitive": list(self.transitive),
            "all_classes": list(self.all_classes),
            "transitive_classes": list(self.transitive_classes),
        }


def quotient_spectrum(
    presentation: Presentation, degree: int, budget: Optional[GaloisBudgetConfig] = None
) -> QuotientSpectrum:
    """Count the actions of every degree up to n, labelled and up to relabelling.

    :raises BudgetExceeded: if some degree is over the configured budget; nothing is truncated.
    """
    if degree < 1:
        raise InvalidParam("the degree must be at least 1")
    budget = resolve_budget(budget)
    check_action_budget(presentation, degree, budget)

    counts: Dict[str, List[int]] = {
        "all": [], "transitive": [], "all_classes": [], "transitive_classes": []
    }
    for n in range(1, degree + 1):
        actions = enumerate_actions(presentation, n, budget)
        transitive = [a for a in actions if a.is_transitive()]
        counts["all"].append(len(actions))
        counts["transitive"].append(len(transitive))
        counts["all_classes"].append(len({canonical_form(a).images for a in actions}))
        counts["transitive_classes"].append(len({canonical_form(a).images for a in transitive}))

    spectrum = QuotientSpectrum(
        degrees=tuple(range(1, degree + 1)),
        **{name: tuple(values) for name, values in counts.items()},
    )
    logger.bind(presentation=presentation.name, **spectrum.as_dict()).debug("quotient_spectrum")
    return spectrum
