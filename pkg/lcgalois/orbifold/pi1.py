"""Presentations of the orbifold fundamental group of a graph with a group action.

The translation groupoid G x X is replaced by a graph Gamma: the vertices of X, its edges,
and for every vertex v and every element g other than the identity an arrow v -> g.v labelled
g. Relators make arrows compose like group elements and commute with the edges of X.
"""

from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.cover.pi1 import SpanningTreeData, pi1_graph
from lcgalois.exceptions import InvalidParam, NotConnected
from lcgalois.fpgroup.actions import action_classes, check_action_budget, enumerate_actions
from lcgalois.fpgroup.words import Presentation, Word, free_reduce
from lcgalois.orbifold.actions import GraphAction, require_action
from lcgalois.orbifold.equivariant import connected_classes, enumerate_equivariant_covers
from lcgalois.typing import DiagnosticCollector, Verdict

logger = structlog.getLogger("lcgalois.orbifold")


def arrow_name(vertex: int, element: int) -> str:
    """Return the generator name of the arrow from a vertex labelled by an element."""
    return f"a{vertex}_{element}"


@dataclass(frozen=True, eq=False)
class OrbifoldPresentationData:
    """A presentation of pi1 of [X/G] with its labelling onto G.

    :ivar labels: The group element of every generator; edges of X are labelled by the
        identity.
    :ivar x_images: The word of every generator of pi1(X), after cleanup.
    :ivar killed: Generators removed because a relator made them trivial.
    """

    action: GraphAction
    presentation: Presentation
    labels: Dict[str, int]
    x_presentation: Presentation
    x_images: Dict[str, Word]
    tree: SpanningTreeData
    killed: Tuple[str, ...]

    def label(self, word: Word) -> int:
        """Return the group element of a word; letters multiply on the left."""
        group = self.action.group
        result = group.identity
        for generator, exponent in word:
            element = self.labels[generator]
            result = group.mul(element if exponent > 0 else group.inv(element), result)
        return result

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        names = self.action.group.elements
        return {
            "presentation": self.presentation.as_dict(),
            "labels": {g: names[e] for g, e in self.labels.items()},
            "pi1_images": {g: str(w) for g, w in self.x_images.items()},
            "killed": list(self.killed),
        }


def _cleanup(
    generators: List[str], relators: List[Word]
) -> Tuple[List[str], List[Word], List[str]]:
    """Remove generators some relator reduces to a single letter, until none is left."""
    killed: List[str] = []
    while True:
        single = sorted({w.letters[0][0] for w in relators if len(w) == 1})
        if not single:
            break
        killed.extend(single)
        relators = [free_reduce(w.drop(single)) for w in relators]
        relators = [w for w in relators if len(w)]
    return [g for g in generators if g not in killed], relators, killed


def orbifold_pi1(action: GraphAction, base: int = 0) -> OrbifoldPresentationData:
    """Present pi1 of the translation groupoid at a base vertex.

    The spanning tree of Gamma is the breadth-first tree of X, so the generators are the
    non-tree edges of X and every arrow. Relators:

    * a(v, h) a(h.v, g) a(v, gh)^-1 for every v and g, h other than the identity, where the
      arrow of the identity is the empty word,
    * a(u, g) [g.d] a(v, g)^-1 [d]^-1 for every edge d: u -> v and g other than the identity.

    :raises NotConnected: if X is not connected.
    :raises InvalidParam: if the action is invalid.
    """
    require_action(action)
    graph, group = action.graph, action.group
    graph.require_vertices()
    if not graph.is_connected():
        logger.bind(graph=graph.name, components=len(graph.components())).warning(
            "not_connected"
        )
        raise NotConnected(f"{graph.name} not connected")

    x_presentation, tree = pi1_graph(graph, base)
    others = range(1, len(group))

    def arrow(vertex: int, element: int) -> Word:
        if element == group.identity:
            return Word()
        return Word(((arrow_name(vertex, element), 1),))

    def edge(dart: int) -> Word:
        return Word.from_letters(tree.word_of_path([dart]))

    labels: Dict[str, int] = {name: group.identity for name in x_presentation.generators}
    generators = list(x_presentation.generators)
    for vertex in range(len(graph.vertices)):
        for element in others:
            labels[arrow_name(vertex, element)] = element
            generators.append(arrow_name(vertex, element))

    relators: List[Word] = []
    for vertex in range(len(graph.vertices)):
        for g in others:
            for h in others:
                moved = action.vertices[h][vertex]
                relators.append(
                    arrow(vertex, h) * arrow(moved, g) * arrow(vertex, group.mul(g, h)).inverse()
                )
    for dart in graph.edges():
        u, v = graph.source(dart), graph.target(dart)
        for g in others:
            relators.append(
                arrow(u, g)
                * edge(action.darts[g][dart])
                * arrow(v, g).inverse()
                * edge(dart).inverse()
            )

    relators = [free_reduce(w) for w in relators]
    relators = [w for w in relators if len(w)]
    generators, relators, killed = _cleanup(generators, relators)
    x_images = {
        name: free_reduce(Word(((name, 1),)).drop(killed)) for name in x_presentation.generators
    }
    presentation = Presentation(
        tuple(generators), tuple(relators), name=f"pi1([{graph.name}/{group.name}])"
    )
    data = OrbifoldPresentationData(
        action,
        presentation,
        {g: labels[g] for g in generators},
        x_presentation,
        x_images,
        tree,
        tuple(killed),
    )
    logger.bind(
        action=action.name,
        generators=presentation.rank,
        relators=len(presentation.relators),
        killed=len(killed),
    ).debug("orbifold_pi1")
    return data


def labelling_witnesses(data: OrbifoldPresentationData) -> Dict[int, Word]:
    """Return, for every element reached by the labelling, a shortest word labelled by it."""
    group = data.action.group
    found: Dict[int, Word] = {group.identity: Word()}
    queue = deque([group.identity])
    letters = [(g, 1) for g in data.presentation.generators]
    while queue:
        current = queue.popleft()
        for letter in letters:
            element = group.mul(data.labels[letter[0]], current)
            if element not in found:
                found[element] = found[current] * Word((letter,))
                queue.append(element)
    return found


def check_labelling(data: OrbifoldPresentationData) -> Verdict:
    """Check symbolically that every relator is labelled by the identity."""
    group = data.action.group
    collector = DiagnosticCollector()
    for relator in data.presentation.relators:
        element = data.label(relator)
        if element != group.identity:
            collector.fail(
                f"relator {relator} is labelled {group.elements[element]}",
                {"relator": str(relator)},
            )
    return collector.verdict(data)


@dataclass(frozen=True, eq=False)
class ExactSequenceReport:
    """Evidence for 1 -> pi1(X) -> pi1([X/G]) -> G -> 1 at finite level.

    :ivar surjective: E1, with witnesses naming a word for every element of G.
    :ivar composite_trivial: E2, every image of a generator of pi1(X) is labelled trivially.
    :ivar covers: E3, per degree, the equivariant cover classes and the connected ones.
    :ivar actions: E3, per degree, the action classes of pi1([X/G]) and the transitive ones.
    """

    data: OrbifoldPresentationData
    surjective: Verdict
    composite_trivial: Verdict
    relators_trivial: Verdict
    degrees: Tuple[int, ...]
    covers: Tuple[Tuple[int, int], ...]
    actions: Tuple[Tuple[int, int], ...]

    @property
    def monodromy_matches(self) -> bool:
        """Check E3: equal counts on both sides at every degree."""
        return self.covers == self.actions

    @property
    def ok(self) -> bool:
        """Check that E1, E2 and E3 hold."""
        return bool(
            self.surjective
            and self.composite_trivial
            and self.relators_trivial
            and self.monodromy_matches
        )

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable report."""
        return {
            "ok": self.ok,
            "presentation": self.data.as_dict(),
            "E1": self.surjective.as_dict(),
            "E2": self.composite_trivial.as_dict(),
            "relators": self.relators_trivial.as_dict(),
            "E3": {
                "ok": self.monodromy_matches,
                "degrees": [
                    {
                        "degree": d,
                        "covers": c[0],
                        "connected_covers": c[1],
                        "actions": a[0],
                        "transitive_actions": a[1],
                    }
                    for d, c, a in zip(self.degrees, self.covers, self.actions)
                ],
            },
        }


def quotient_exact_sequence(
    action: GraphAction,
    base: int = 0,
    degree_cap: Optional[int] = None,
    budget: Optional[GaloisBudgetConfig] = None,
) -> ExactSequenceReport:
    """Collect E1, E2 and E3 for the sequence pi1(X) -> pi1([X/G]) -> G.

    E3 compares, for every degree up to the cap, the equivariant covers with the actions of
    pi1([X/G]): all classes on both sides, and the connected covers with the transitive
    actions. The cap defaults to the DEGREE_CAP budget.

    :raises NotConnected: if X is not connected.
    :raises BudgetExceeded: if some enumeration is over its budget.
    """
    budget = resolve_budget(budget)
    cap = budget.limit("DEGREE_CAP") if degree_cap is None else degree_cap
    if cap < 1:
        raise InvalidParam("the degree cap must be at least 1")
    budget.enforce("DEGREE_CAP", cap, "exact sequence degree cap")

    data = orbifold_pi1(action, base)
    group = action.group

    witnesses = labelling_witnesses(data)
    surjective = DiagnosticCollector()
    missing = [group.elements[g] for g in range(len(group)) if g not in witnesses]
    if missing:
        surjective.fail(f"labelling misses {', '.join(missing)}", {"missing": missing})
    surjective_verdict = surjective.verdict(
        {group.elements[g]: str(w) for g, w in sorted(witnesses.items())}
    )

    composite = DiagnosticCollector()
    for name, word in data.x_images.items():
        element = data.label(word)
        if element != group.identity:
            composite.fail(
                f"image of {name} is labelled {group.elements[element]}", {"generator": name}
            )

    check_action_budget(data.presentation, cap, budget)
    covers: List[Tuple[int, int]] = []
    actions: List[Tuple[int, int]] = []
    for degree in range(1, cap + 1):
        found = enumerate_equivariant_covers(action, degree, budget)
        covers.append((len(found), len(connected_classes(found))))
        classes = action_classes(enumerate_actions(data.presentation, degree, budget))
        actions.append((len(classes), sum(1 for a in classes if a.is_transitive())))

    report = ExactSequenceReport(
        data,
        surjective_verdict,
        composite.verdict({g: str(w) for g, w in data.x_images.items()}),
        check_labelling(data),
        tuple(range(1, cap + 1)),
        tuple(covers),
        tuple(actions),
    )
    logger.bind(action=action.name, cap=cap, ok=report.ok).info("quotient_exact_sequence")
    return report
