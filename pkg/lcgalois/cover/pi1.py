"""Fundamental groups of graphs through breadth-first spanning trees."""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import structlog

from lcgalois.cover.graphs import Graph
from lcgalois.fpgroup.words import Presentation

logger = structlog.getLogger("lcgalois.cover")


@dataclass(frozen=True)
class SpanningTreeData:
    """A breadth-first spanning tree of the base vertex's component.

    :ivar parent: For each vertex of the component, the dart from its parent to it; None at
        the base and outside the component.
    :ivar component: The vertices of the base component, sorted.
    :ivar generators: The canonical darts of the non-tree edges, in dart order.
    """

    graph: Graph
    base: int
    parent: Tuple[Optional[int], ...]
    component: Tuple[int, ...]
    generators: Tuple[int, ...]

    def generator_name(self, dart: int) -> str:
        """Return the generator name of a non-tree canonical dart."""
        return f"x{dart}"

    @property
    def names(self) -> Tuple[str, ...]:
        """Return the generator names, in generator order."""
        return tuple(self.generator_name(d) for d in self.generators)

    def is_tree_dart(self, dart: int) -> bool:
        """Check if a dart or its partner is a tree edge."""
        partner = self.graph.involution[dart]
        return dart in self.parent or partner in self.parent

    def path_from_base(self, vertex: int) -> List[int]:
        """Return the tree darts from the base to a vertex of the component."""
        darts: List[int] = []
        while vertex != self.base:
            dart = self.parent[vertex]
            darts.append(dart)
            vertex = self.graph.source(dart)
        return darts[::-1]

    def path_to_base(self, vertex: int) -> List[int]:
        """Return the tree darts from a vertex of the component back to the base."""
        return [self.graph.involution[d] for d in reversed(self.path_from_base(vertex))]

    def loop(self, dart: int) -> List[int]:
        """Return the closed path base -> source(dart) -> dart -> target(dart) -> base."""
        graph = self.graph
        return (
            self.path_from_base(graph.source(dart))
            + [dart]
            + self.path_to_base(graph.target(dart))
        )

    def word_of_path(self, darts: List[int]) -> List[Tuple[str, int]]:
        """Return the generator letters a closed path at the base passes through."""
        letters: List[Tuple[str, int]] = []
        for dart in darts:
            partner = self.graph.involution[dart]
            if dart in self.generators:
                letters.append((self.generator_name(dart), 1))
            elif partner in self.generators:
                letters.append((self.generator_name(partner), -1))
        return letters

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form."""
        graph = self.graph
        return {
            "base": graph.vertices[self.base],
            "tree": [graph.dart_names[d] for d in self.parent if d is not None],
            "generators": {
                self.generator_name(d): graph.dart_names[d] for d in self.generators
            },
        }


def spanning_tree(graph: Graph, base: int) -> SpanningTreeData:
    """Grow a breadth-first tree from the base; darts are tried in dart order.

    :raises EmptyGraph: if the graph has no vertices.
    """
    graph.require_vertices()
    graph.check_vertex(base)
    parent: List[Optional[int]] = [None] * len(graph.vertices)
    seen = {base}
    order = [base]
    for vertex in order:
        for dart in graph.darts_at(vertex):
            target = graph.target(dart)
            if target not in seen:
                seen.add(target)
                parent[target] = dart
                order.append(target)

    tree = {d for d in parent if d is not None}
    tree |= {graph.involution[d] for d in tree}
    generators = tuple(
        d for d in graph.edges() if d not in tree and graph.source(d) in seen
    )
    return SpanningTreeData(graph, base, tuple(parent), tuple(sorted(seen)), generators)


def pi1_graph(graph: Graph, base: int = 0) -> Tuple[Presentation, SpanningTreeData]:
    """Return the free group on the non-tree edges of the base component, with its tree.

    The rank is E - V + 1 of the base component. A disconnected graph is reduced to the base
    component, with a warning.

    :raises EmptyGraph: if the graph has no vertices.
    """
    tree = spanning_tree(graph, base)
    if len(tree.component) != len(graph.vertices):
        logger.bind(
            graph=graph.name,
            base=graph.vertices[base],
            components=len(graph.components()),
        ).warning("disconnected_graph")
    presentation = Presentation.free(tree.names, name=f"pi1({graph.name})")
    logger.bind(graph=graph.name, rank=presentation.rank).debug("pi1_graph")
    return presentation, tree
