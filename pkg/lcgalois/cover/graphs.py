"""Finite graphs in the dart formalism.

A graph has vertices and darts (half-edges). Every dart is attached to a vertex, and a
fixed-point-free involution pairs the darts into edges. A dart runs from the vertex it is
attached to towards the vertex its partner is attached to. Loops and parallel edges need no
special treatment.

Graphs built from an edge list put the darts of edge k at 2k (attached to the first endpoint)
and 2k + 1 (attached to the second).
"""

from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import structlog

from lcgalois.exceptions import EmptyGraph, InvalidParam, InvariantViolation
from lcgalois.typing import DiagnosticCollector, Verdict

logger = structlog.getLogger("lcgalois.cover")


def validate_graph(
    vertices: Sequence[str], attach: Sequence[int], involution: Sequence[int]
) -> Verdict:
    """Check the dart structure: attachments in range and a fixed-point-free involution."""
    collector = DiagnosticCollector()
    if len(set(vertices)) != len(vertices):
        collector.fail("vertex names are not unique")
    if len(attach) != len(involution):
        collector.fail("attachment and involution have different lengths")
        return collector.verdict()

    darts = len(involution)
    for dart, vertex in enumerate(attach):
        if not 0 <= vertex < len(vertices):
            collector.fail(f"dart {dart} attached to no vertex", witness={"dart": dart})
    for dart, partner in enumerate(involution):
        if not 0 <= partner < darts:
            collector.fail(f"dart {dart} paired with no dart", witness={"dart": dart})
        elif partner == dart:
            collector.fail(
                f"dart {dart} is a fixed point of the involution", witness={"dart": dart}
            )
        elif involution[partner] != dart:
            collector.fail(
                f"involution is not an involution at dart {dart}", witness={"dart": dart}
            )
    return collector.verdict()


class Graph:
    """A finite graph with darts."""

    def __init__(
        self,
        vertices: Sequence[str],
        attach: Sequence[int],
        involution: Sequence[int],
        name: str = "X",
        dart_names: Optional[Sequence[str]] = None,
        check: bool = True,
    ) -> None:
        """Create a graph.

        :param vertices: Vertex names.
        :param attach: attach[d] is the vertex dart d is attached to.
        :param involution: involution[d] is the partner of dart d.
        :param dart_names: Display names for the darts; defaults to "d{index}".
        :raises InvariantViolation: if the dart structure is broken.
        """
        if check:
            verdict = validate_graph(vertices, attach, involution)
            if not verdict:
                raise InvariantViolation(verdict.diagnostics)
        self.name = name
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self.attach: Tuple[int, ...] = tuple(int(v) for v in attach)
        self.involution: Tuple[int, ...] = tuple(int(d) for d in involution)
        self.dart_names: Tuple[str, ...] = (
            tuple(dart_names) if dart_names else tuple(f"d{d}" for d in range(len(attach)))
        )
        self._star: Dict[int, Tuple[int, ...]] = {}
        for dart, vertex in enumerate(self.attach):
            self._star[vertex] = self._star.get(vertex, ()) + (dart,)

    def __eq__(self, other: object) -> bool:
        """Compare the combinatorial structure; names of the graph and darts are ignored."""
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.attach == other.attach
            and self.involution == other.involution
        )

    def __hash__(self) -> int:
        """Hash the combinatorial structure."""
        return hash((self.vertices, self.attach, self.involution))

    def __repr__(self) -> str:
        """Return a short description."""
        return f"<Graph {self.name}: {len(self.vertices)} vertices, {self.num_edges} edges>"

    @property
    def num_darts(self) -> int:
        """Return the number of darts."""
        return len(self.attach)

    @property
    def num_edges(self) -> int:
        """Return the number of edges."""
        return len(self.attach) // 2

    def vertex(self, name: str) -> int:
        """Return the index of a vertex name.

        :raises InvalidParam: if no vertex has that name.
        """
        try:
            return self.vertices.index(name)
        except ValueError:
            raise InvalidParam(f"no vertex named {name!r} in {self.name}") from None

    def check_vertex(self, vertex: int) -> None:
        """Refuse a vertex index outside the graph."""
        if not 0 <= vertex < len(self.vertices):
            raise InvalidParam(f"vertex {vertex} outside {self.name}")

    def darts_at(self, vertex: int) -> Tuple[int, ...]:
        """Return the darts attached to a vertex, in dart order."""
        return self._star.get(vertex, ())

    def source(self, dart: int) -> int:
        """Return the vertex a dart starts at."""
        return self.attach[dart]

    def target(self, dart: int) -> int:
        """Return the vertex a dart runs to."""
        return self.attach[self.involution[dart]]

    def edges(self) -> Tuple[int, ...]:
        """Return the canonical dart of every edge: the smaller of the pair."""
        return tuple(d for d in range(self.num_darts) if d < self.involution[d])

    def as_networkx(self) -> nx.MultiGraph:
        """Return the underlying multigraph, one edge per dart pair keyed by canonical dart."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        for dart in self.edges():
            graph.add_edge(self.source(dart), self.target(dart), key=dart)
        return graph

    def components(self) -> List[Tuple[int, ...]]:
        """Return the connected components, sorted by least vertex."""
        return sorted(tuple(sorted(c)) for c in nx.connected_components(self.as_networkx()))

    def component_of(self, vertex: int) -> Tuple[int, ...]:
        """Return the component containing a vertex."""
        return next(c for c in self.components() if vertex in c)

    def is_connected(self) -> bool:
        """Check if the graph is non-empty and connected."""
        return len(self.vertices) > 0 and len(self.components()) == 1

    def require_vertices(self) -> None:
        """Refuse an empty graph.

        :raises EmptyGraph: if the graph has no vertices.
        """
        if not self.vertices:
            raise EmptyGraph(f"{self.name} has no vertices")

    def euler_characteristic(self) -> int:
        """Return V - E."""
        return len(self.vertices) - self.num_edges

    def adjacency(self) -> np.ndarray:
        """Return the adjacency matrix; a loop counts twice on the diagonal."""
        matrix = np.zeros((len(self.vertices), len(self.vertices)), dtype=np.int64)
        for dart in range(self.num_darts):
            matrix[self.source(dart), self.target(dart)] += 1
        return matrix

    # Constructors

    @classmethod
    def from_edges(
        cls,
        vertices: Sequence[str],
        edges: Sequence[Tuple[int, int]],
        name: str = "X",
    ) -> "Graph":
        """Build a graph from endpoint pairs; edge k has darts e{k}+ (2k) and e{k}- (2k + 1)."""
        attach: List[int] = []
        involution: List[int] = []
        names: List[str] = []
        for k, (u, v) in enumerate(edges):
            attach.extend([u, v])
            involution.extend([2 * k + 1, 2 * k])
            names.extend([f"e{k}+", f"e{k}-"])
        return cls(vertices, attach, involution, name=name, dart_names=names)

    @classmethod
    def cycle(cls, n: int, name: str = "") -> "Graph":
        """Return the cycle with n vertices; the 1-cycle is a single loop."""
        if n < 1:
            raise InvalidParam("a cycle needs at least one vertex")
        edges = [(k, (k + 1) % n) for k in range(n)]
        return cls.from_edges([f"v{k}" for k in range(n)], edges, name=name or f"C{n}")

    @classmethod
    def bouquet(cls, loops: int, name: str = "") -> "Graph":
        """Return one vertex with some loops."""
        return cls.from_edges(["v0"], [(0, 0)] * loops, name=name or f"B{loops}")

    @classmethod
    def theta(cls, edges: int = 3, name: str = "") -> "Graph":
        """Return two vertices joined by parallel edges."""
        return cls.from_edges(["v0", "v1"], [(0, 1)] * edges, name=name or f"Theta{edges}")

    @classmethod
    def complete(cls, n: int, name: str = "") -> "Graph":
        """Return the complete graph on n vertices."""
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return cls.from_edges([f"v{k}" for k in range(n)], edges, name=name or f"K{n}")

    @classmethod
    def path(cls, n: int, name: str = "") -> "Graph":
        """Return the path with n vertices."""
        edges = [(k, k + 1) for k in range(n - 1)]
        return cls.from_edges([f"v{k}" for k in range(n)], edges, name=name or f"P{n}")

    @classmethod
    def disjoint_union(cls, graphs: Sequence["Graph"], name: str = "") -> "Graph":
        """Return the disjoint union; vertex v of the k-th graph is named "k:v"."""
        vertices: List[str] = []
        attach: List[int] = []
        involution: List[int] = []
        names: List[str] = []
        vertex_offset = dart_offset = 0
        for k, graph in enumerate(graphs):
            vertices.extend(f"{k}:{v}" for v in graph.vertices)
            attach.extend(vertex_offset + v for v in graph.attach)
            involution.extend(dart_offset + d for d in graph.involution)
            names.extend(f"{k}:{d}" for d in graph.dart_names)
            vertex_offset += len(graph.vertices)
            dart_offset += graph.num_darts
        label = name or "+".join(g.name for g in graphs)
        return cls(vertices, attach, involution, name=label, dart_names=names, check=False)

    def as_dict(self):
        """Return a serializable form."""
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "edges": [
                [self.dart_names[d], self.vertices[self.source(d)], self.vertices[self.target(d)]]
                for d in self.edges()
            ],
        }


def induced_subgraph(graph: Graph, vertices: Sequence[int], name: str = "") -> Graph:
    """Return the subgraph on some vertices with every dart between them.

    Vertices and darts keep their relative order.
    """
    keep = sorted(vertices)
    position = {v: k for k, v in enumerate(keep)}
    darts = [
        d
        for d in range(graph.num_darts)
        if graph.source(d) in position and graph.target(d) in position
    ]
    dart_position = {d: k for k, d in enumerate(darts)}
    logger.bind(graph=graph.name, vertices=len(keep), darts=len(darts)).debug("induced_subgraph")
    return Graph(
        [graph.vertices[v] for v in keep],
        [position[graph.attach[d]] for d in darts],
        [dart_position[graph.involution[d]] for d in darts],
        name=name or graph.name,
        dart_names=[graph.dart_names[d] for d in darts],
        check=False,
    )
