"""Finite groups acting on graphs: the translation groupoid G x X over X."""

from dataclasses import dataclass
from typing import Any, Dict, Mapping as TypingMapping, Sequence, Tuple

import structlog

from lcgalois.core.groupoids import FiniteGroupoid
from lcgalois.core.groups import FiniteGroup
from lcgalois.cover.covers import BaseTwist
from lcgalois.cover.graphs import Graph
from lcgalois.exceptions import InvalidParam, InvariantViolation
from lcgalois.gset.gsets import GSet
from lcgalois.tools import compose, is_permutation, perm_orbits, perm_to_cycles
from lcgalois.typing import DiagnosticCollector, Perm, Verdict

logger = structlog.getLogger("lcgalois.orbifold")


@dataclass(frozen=True, eq=False)
class GraphAction:
    """A left action of a finite group on a graph by graph automorphisms.

    :ivar vertices: vertices[g][x] is g.x.
    :ivar darts: darts[g][d] is g.d.
    """

    group: FiniteGroup
    graph: Graph
    vertices: Tuple[Perm, ...]
    darts: Tuple[Perm, ...]
    name: str = "a"

    def twist(self, element: int) -> BaseTwist:
        """Return the graph automorphism of a group element."""
        return BaseTwist(self.vertices[element], self.darts[element])

    def vertex_gset(self) -> GSet:
        """Return the action on vertices as a G-set."""
        return GSet(
            self.group, self.graph.vertices, self.vertices, name=self.graph.name, check=False
        )

    def groupoid(self) -> FiniteGroupoid:
        """Return the translation groupoid G x V => V."""
        return self.vertex_gset().action_groupoid()

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        return {
            "group": self.group.name,
            "graph": self.graph.name,
            "act": {
                self.group.elements[g]: {
                    "vertices": perm_to_cycles(self.vertices[g]),
                    "darts": perm_to_cycles(self.darts[g]),
                }
                for g in range(len(self.group))
            },
            "free": is_free(self),
        }

    @classmethod
    def trivial(cls, graph: Graph) -> "GraphAction":
        """Return the trivial group acting on a graph."""
        twist = BaseTwist.identity(graph)
        return cls(FiniteGroup.trivial(), graph, (twist.vertices,), (twist.darts,))

    @classmethod
    def from_images(
        cls,
        group: FiniteGroup,
        graph: Graph,
        images: TypingMapping[int, Tuple[Perm, Perm]],
        name: str = "a",
    ) -> "GraphAction":
        """Extend the images of some group elements to the whole group.

        The given elements must generate the group; the identity acts trivially unless given.
        The result is not validated.

        :raises InvalidParam: if the given elements do not generate the group or an image is
            not a permutation.
        """
        identity = BaseTwist.identity(graph)
        for element, (vertices, darts) in images.items():
            if not is_permutation(vertices, len(graph.vertices)) or not is_permutation(
                darts, graph.num_darts
            ):
                raise InvalidParam(f"image of {group.elements[element]} is not a permutation")

        generators = sorted(g for g in images if g != 0)
        words = group.words(generators)
        if len(words) != len(group):
            raise InvalidParam("the given elements do not generate the group")

        vertex_images, dart_images = [], []
        for element in range(len(group)):
            if element in images:
                vertices, darts = images[element]
            else:
                vertices, darts = identity.vertices, identity.darts
                for position in words[element]:
                    step = images[generators[position]]
                    vertices = compose(step[0], vertices)
                    darts = compose(step[1], darts)
            vertex_images.append(tuple(vertices))
            dart_images.append(tuple(darts))
        return cls(group, graph, tuple(vertex_images), tuple(dart_images), name=name)


def validate_action(action: GraphAction) -> Verdict:
    """Check that every element acts by a graph automorphism and that act is a left action.

    The diagnostics name the failing axiom and the witnessing elements.
    """
    group, graph = action.group, action.graph
    names = group.elements
    collector = DiagnosticCollector()
    if len(action.vertices) != len(group) or len(action.darts) != len(group):
        collector.fail("action needs one image per group element")
        return collector.verdict()

    for g in range(len(group)):
        vertices, darts = action.vertices[g], action.darts[g]
        if not is_permutation(vertices, len(graph.vertices)) or not is_permutation(
            darts, graph.num_darts
        ):
            collector.fail(f"bijectivity: {names[g]} does not permute the graph", {"g": names[g]})
            return collector.verdict()
        for dart in range(graph.num_darts):
            if graph.attach[darts[dart]] != vertices[graph.attach[dart]]:
                collector.fail(
                    f"attachment: {names[g]} moves dart {graph.dart_names[dart]} off its vertex",
                    {"g": names[g], "dart": graph.dart_names[dart]},
                )
                break
            if darts[graph.involution[dart]] != graph.involution[darts[dart]]:
                collector.fail(
                    f"involution: {names[g]} breaks the edge of {graph.dart_names[dart]}",
                    {"g": names[g], "dart": graph.dart_names[dart]},
                )
                break

    identity = BaseTwist.identity(graph)
    if action.vertices[0] != identity.vertices or action.darts[0] != identity.darts:
        collector.fail(f"identity: {names[0]} does not act trivially", {"g": names[0]})

    for g in range(len(group)):
        for h in range(len(group)):
            gh = group.mul(g, h)
            if compose(action.vertices[h], action.vertices[g]) != action.vertices[gh] or compose(
                action.darts[h], action.darts[g]
            ) != action.darts[gh]:
                collector.fail(
                    f"composition: act({names[g]}) act({names[h]}) != act({names[gh]})",
                    {"g": names[g], "h": names[h]},
                )
    verdict = collector.verdict(action)
    logger.bind(action=action.name, ok=verdict.ok).debug("action_validated")
    return verdict


def require_action(action: GraphAction) -> None:
    """Refuse an invalid action.

    :raises InvariantViolation: with the diagnostics of validate_action.
    """
    verdict = validate_action(action)
    if not verdict:
        raise InvariantViolation(verdict.diagnostics)


def is_free(action: GraphAction) -> bool:
    """Check that no element but the identity fixes a vertex, a dart or an edge."""
    graph = action.graph
    for g in range(1, len(action.group)):
        if any(action.vertices[g][x] == x for x in range(len(graph.vertices))):
            return False
        for dart in range(graph.num_darts):
            if action.darts[g][dart] in (dart, graph.involution[dart]):
                return False
    return True


def quotient_graph(action: GraphAction) -> Graph:
    """Return X/G for a free action; vertices and darts are orbits, ordered by least member.

    :raises InvalidParam: if the action is not free.
    """
    if not is_free(action):
        raise InvalidParam(f"{action.name} is not free")
    graph = action.graph
    vertex_orbits = perm_orbits(action.vertices, len(graph.vertices))
    dart_orbits = perm_orbits(action.darts, graph.num_darts)
    vertex_of = {x: k for k, orbit in enumerate(vertex_orbits) for x in orbit}
    dart_of = {d: k for k, orbit in enumerate(dart_orbits) for d in orbit}
    quotient = Graph(
        ["{" + ",".join(graph.vertices[x] for x in orbit) + "}" for orbit in vertex_orbits],
        [vertex_of[graph.attach[orbit[0]]] for orbit in dart_orbits],
        [dart_of[graph.involution[orbit[0]]] for orbit in dart_orbits],
        name=f"{graph.name}/{action.group.name}",
        dart_names=[graph.dart_names[orbit[0]] for orbit in dart_orbits],
    )
    logger.bind(action=action.name, vertices=len(vertex_orbits)).debug("quotient_graph")
    return quotient


def orbit_representatives(action: GraphAction) -> Sequence[int]:
    """Return the least vertex of every vertex orbit."""
    return [orbit[0] for orbit in perm_orbits(action.vertices, len(action.graph.vertices))]
