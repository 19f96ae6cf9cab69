"""Covering maps of graphs, path lifting, monodromy and deck transformations."""

from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import structlog

from lcgalois.core.groups import FiniteGroup
from lcgalois.cover.graphs import Graph
from lcgalois.cover.pi1 import SpanningTreeData, pi1_graph, spanning_tree
from lcgalois.exceptions import (
    BaseMismatch,
    InvalidCover,
    InvalidParam,
    InvariantViolation,
    NotConnected,
)
from lcgalois.fpgroup.actions import FiniteAction
from lcgalois.tools import compose, perm_to_cycles
from lcgalois.typing import DiagnosticCollector, Mapping, Perm, Verdict

logger = structlog.getLogger("lcgalois.cover")


@dataclass(frozen=True, eq=False)
class CoveringMap:
    """A graph map from the total graph onto the base graph.

    :ivar vertex_map: The base vertex of every total vertex.
    :ivar dart_map: The base dart of every total dart.
    """

    total: Graph
    base: Graph
    vertex_map: Mapping
    dart_map: Mapping

    def fiber(self, vertex: int) -> Tuple[int, ...]:
        """Return the total vertices over a base vertex, sorted."""
        return tuple(z for z, v in enumerate(self.vertex_map) if v == vertex)

    def degree(self, vertex: int = 0) -> int:
        """Return the fiber size over a base vertex."""
        return len(self.fiber(vertex))

    def lookup(self) -> Dict[Tuple[int, int], int]:
        """Return (total vertex, base dart) -> the total dart over it at that vertex."""
        return {
            (self.total.attach[d], self.dart_map[d]): d for d in range(self.total.num_darts)
        }

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        return {
            "base": self.base.name,
            "total": self.total.as_dict(),
            "vmap": {
                self.total.vertices[z]: self.base.vertices[v]
                for z, v in enumerate(self.vertex_map)
            },
            "degree": self.degree() if self.base.vertices else 0,
        }


def validate_cover(cover: CoveringMap) -> Verdict:
    """Check that the map is a graph map and a bijection on the star of every vertex.

    Diagnostics stop at the first failing check family; the witness locates the first failure.
    """
    total, base = cover.total, cover.base
    collector = DiagnosticCollector()
    if len(cover.vertex_map) != len(total.vertices) or len(cover.dart_map) != total.num_darts:
        collector.fail("vertex or dart map has the wrong length")
        return collector.verdict()
    if any(not 0 <= v < len(base.vertices) for v in cover.vertex_map) or any(
        not 0 <= d < base.num_darts for d in cover.dart_map
    ):
        collector.fail("vertex or dart map leaves the base graph")
        return collector.verdict()

    for dart in range(total.num_darts):
        image = cover.dart_map[dart]
        if cover.vertex_map[total.attach[dart]] != base.attach[image]:
            collector.fail(
                f"dart {total.dart_names[dart]} does not commute with attachment",
                witness={"dart": total.dart_names[dart]},
            )
        if cover.dart_map[total.involution[dart]] != base.involution[image]:
            collector.fail(
                f"dart {total.dart_names[dart]} does not commute with the involution",
                witness={"dart": total.dart_names[dart]},
            )
    if collector.diagnostics:
        return collector.verdict()

    for vertex in range(len(total.vertices)):
        star = sorted(cover.dart_map[d] for d in total.darts_at(vertex))
        expected = list(base.darts_at(cover.vertex_map[vertex]))
        if star != expected:
            collector.fail(
                f"star of {total.vertices[vertex]} is not mapped bijectively",
                witness={"vertex": total.vertices[vertex], "star": star, "expected": expected},
            )
    verdict = collector.verdict(cover)
    if not verdict:
        logger.bind(base=base.name, failures=len(verdict.diagnostics)).debug("invalid_cover")
    return verdict


def require_cover(cover: CoveringMap) -> None:
    """Refuse a map that is not a covering map.

    :raises InvalidCover: with the diagnostics of validate_cover.
    """
    verdict = validate_cover(cover)
    if not verdict:
        raise InvalidCover(verdict.diagnostics)


def identity_cover(graph: Graph) -> CoveringMap:
    """Return the identity map of a graph."""
    return CoveringMap(
        graph, graph, tuple(range(len(graph.vertices))), tuple(range(graph.num_darts))
    )


def trivial_cover(graph: Graph, degree: int) -> CoveringMap:
    """Return degree disjoint copies of a graph over it."""
    total = Graph.disjoint_union([graph] * degree, name=f"{degree}x{graph.name}")
    vertex_map = tuple(v for _ in range(degree) for v in range(len(graph.vertices)))
    dart_map = tuple(d for _ in range(degree) for d in range(graph.num_darts))
    return CoveringMap(total, graph, vertex_map, dart_map)


def lift_path(cover: CoveringMap, darts: Sequence[int], start: int) -> Tuple[List[int], int]:
    """Lift a path of base darts starting at a total vertex.

    :returns: The lifted darts and the end vertex.
    :raises InvalidParam: if the path does not start under the start vertex or is not a path.
    """
    lookup = cover.lookup()
    current = start
    lifted: List[int] = []
    for dart in darts:
        if cover.vertex_map[current] != cover.base.attach[dart]:
            raise InvalidParam(f"dart {cover.base.dart_names[dart]} does not continue the path")
        step = lookup[(current, dart)]
        lifted.append(step)
        current = cover.total.target(step)
    return lifted, current


def path_monodromy(cover: CoveringMap, darts: Sequence[int], vertex: int) -> Perm:
    """Return the permutation of the fiber over a vertex induced by a closed path there.

    Fiber points are numbered in the order of ``cover.fiber(vertex)``.
    """
    fiber = cover.fiber(vertex)
    position = {z: k for k, z in enumerate(fiber)}
    return tuple(position[lift_path(cover, darts, z)[1]] for z in fiber)


def monodromy(
    cover: CoveringMap, base: int = 0, tree: Optional[SpanningTreeData] = None
) -> FiniteAction:
    """Return the action of pi1(base graph, base) on the fiber over the base vertex.

    Each generator acts by lifting its loop; point k of the action is the k-th total vertex
    over the base vertex.

    :raises InvalidCover: if the map is not a covering map.
    """
    require_cover(cover)
    if tree is None:
        _, tree = pi1_graph(cover.base, base)
    images = tuple(path_monodromy(cover, tree.loop(d), base) for d in tree.generators)
    action = FiniteAction(tree.names, cover.degree(base), images)
    logger.bind(
        base=cover.base.name,
        degree=action.degree,
        images=[perm_to_cycles(p) for p in images],
    ).debug("monodromy")
    return action


def _check_action(tree: SpanningTreeData, action: FiniteAction) -> None:
    if action.degree < 1:
        raise InvalidParam("a cover needs degree at least 1")
    if action.generators != tree.names:
        raise InvalidParam(
            f"action generators {list(action.generators)} are not {list(tree.names)}"
        )


def _cover_from_sheets(graph: Graph, n: int, sheets: Dict[int, Perm]) -> CoveringMap:
    """Lift every dart sheet by sheet, except generator darts which follow their sheets."""
    involution = [0] * (graph.num_darts * n)
    for dart in range(graph.num_darts):
        partner = graph.involution[dart]
        for i in range(n):
            if dart in sheets:
                j = sheets[dart][i]
            elif partner in sheets:
                j = sheets[partner].index(i)
            else:
                j = i
            involution[dart * n + i] = partner * n + j

    total = Graph(
        [f"({v},{i + 1})" for v in graph.vertices for i in range(n)],
        [graph.attach[d] * n + i for d in range(graph.num_darts) for i in range(n)],
        involution,
        name=f"{graph.name}~{n}",
        dart_names=[f"({name},{i + 1})" for name in graph.dart_names for i in range(n)],
    )
    vertex_map = tuple(v for v in range(len(graph.vertices)) for _ in range(n))
    dart_map = tuple(d for d in range(graph.num_darts) for _ in range(n))
    logger.bind(base=graph.name, degree=n).debug("cover_from_action")
    return CoveringMap(total, graph, vertex_map, dart_map)


def cover_from_action(graph: Graph, base: int, action: FiniteAction) -> CoveringMap:
    """Build the cover of a graph whose monodromy at the base is a given action.

    The total vertex (v, i) has index v * n + i and the total dart (d, i) has index d * n + i.
    Tree darts and darts outside the base component lift sheet by sheet; the dart (x, i) of a
    generator x runs to sheet sigma_x(i).

    :raises InvalidParam: if the degree is 0 or the action is not one of pi1(graph, base).
    """
    _, tree = pi1_graph(graph, base)
    _check_action(tree, action)
    return _cover_from_sheets(graph, action.degree, dict(zip(tree.generators, action.images)))


def cover_from_component_actions(graph: Graph, actions: Dict[int, FiniteAction]) -> CoveringMap:
    """Build a cover of a possibly disconnected graph from its monodromy at one base each.

    ``actions`` maps a base vertex of every component to an action of pi1 at that base.

    :raises InvalidParam: if a component has no base or two, or the degrees differ.
    """
    components = graph.components()
    covered = sorted(graph.component_of(base) for base in actions)
    if covered != components:
        raise InvalidParam("cover needs exactly one base vertex per component")
    degrees = {action.degree for action in actions.values()}
    if len(degrees) != 1:
        raise InvalidParam(f"actions of different degrees {sorted(degrees)}")

    sheets: Dict[int, Perm] = {}
    for base, action in actions.items():
        tree = spanning_tree(graph, base)
        _check_action(tree, action)
        sheets.update(zip(tree.generators, action.images))
    return _cover_from_sheets(graph, degrees.pop(), sheets)


@dataclass(frozen=True)
class CoverMorphism:
    """Vertex and dart maps of a map of covers over the same base."""

    vertex_map: Mapping
    dart_map: Mapping


@dataclass(frozen=True)
class BaseTwist:
    """An automorphism of the base graph that a map of covers lies over."""

    vertices: Perm
    darts: Perm

    @classmethod
    def identity(cls, graph: Graph) -> "BaseTwist":
        """Return the identity of a graph."""
        return cls(tuple(range(len(graph.vertices))), tuple(range(graph.num_darts)))


def _extend_lift(
    source: CoveringMap,
    target: CoveringMap,
    start: int,
    image: int,
    twist: BaseTwist,
    lookup: Dict[Tuple[int, int], int],
) -> Optional[Tuple[Dict[int, int], Dict[int, int]]]:
    """Extend start -> image to a lift of the twist on the component of start, if possible."""
    if twist.vertices[source.vertex_map[start]] != target.vertex_map[image]:
        return None
    vertices = {start: image}
    darts: Dict[int, int] = {}
    queue = [start]
    for vertex in queue:
        for dart in source.total.darts_at(vertex):
            step = lookup[(vertices[vertex], twist.darts[source.dart_map[dart]])]
            partner = source.total.involution[dart]
            step_partner = target.total.involution[step]
            for d, e in ((dart, step), (partner, step_partner)):
                if darts.setdefault(d, e) != e:
                    return None
            end, end_image = source.total.attach[partner], target.total.attach[step_partner]
            if end not in vertices:
                vertices[end] = end_image
                queue.append(end)
            elif vertices[end] != end_image:
                return None
    return vertices, darts


def iter_cover_isomorphisms(
    left: CoveringMap, right: CoveringMap, twist: Optional[BaseTwist] = None
) -> Iterator[CoverMorphism]:
    """Yield every isomorphism of total graphs lying over a base automorphism.

    The twist defaults to the identity, giving the isomorphisms of covers. Components of the
    left total graph are matched one at a time, in order of their least vertex.
    """
    if len(left.total.vertices) != len(right.total.vertices):
        return
    twist = twist or BaseTwist.identity(left.base)
    lookup = right.lookup()
    components = left.total.components()
    size = len(left.total.vertices)

    def search(k: int, vertices: Dict[int, int], darts: Dict[int, int]):
        if k == len(components):
            yield CoverMorphism(
                tuple(vertices[z] for z in range(size)),
                tuple(darts[d] for d in range(left.total.num_darts)),
            )
            return
        root = components[k][0]
        used = set(vertices.values())
        for candidate in right.fiber(twist.vertices[left.vertex_map[root]]):
            if candidate in used:
                continue
            extension = _extend_lift(left, right, root, candidate, twist, lookup)
            if extension is None:
                continue
            images = set(extension[0].values())
            if used & images or len(images) != len(extension[0]):
                continue
            yield from search(k + 1, {**vertices, **extension[0]}, {**darts, **extension[1]})

    yield from search(0, {}, {})


def find_cover_isomorphism(left: CoveringMap, right: CoveringMap) -> Optional[CoverMorphism]:
    """Search for an isomorphism of covers over the same base.

    :raises BaseMismatch: if the covers have different bases.
    """
    if left.base != right.base:
        raise BaseMismatch("covers of different graphs")
    return next(iter_cover_isomorphisms(left, right), None)


@dataclass(frozen=True, eq=False)
class DeckGroup:
    """The automorphisms of a connected cover.

    :ivar group: The deck group; a * b is "a then b" on total vertices.
    :ivar transformations: The deck transformations, in group element order.
    :ivar galois: Whether the deck group acts transitively on the fiber.
    """

    group: FiniteGroup
    transformations: Tuple[CoverMorphism, ...]
    degree: int
    galois: bool

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        return {
            "order": len(self.group),
            "degree": self.degree,
            "galois": self.galois,
            "elements": list(self.group.elements),
        }


def deck_group(cover: CoveringMap, base: int = 0) -> DeckGroup:
    """Compute every deck transformation; each is determined by the image of one point.

    :raises NotConnected: if the total graph is not connected.
    :raises InvalidCover: if the map is not a covering map.
    """
    require_cover(cover)
    if not cover.total.is_connected():
        logger.bind(total=cover.total.name).warning("not_connected")
        raise NotConnected(f"{cover.total.name} not connected")

    fiber = cover.fiber(base)
    transformations = sorted(
        iter_cover_isomorphisms(cover, cover), key=lambda t: t.vertex_map
    )

    maps = [t.vertex_map for t in transformations]
    group = FiniteGroup.from_function(
        maps,
        compose,
        name=f"Deck({cover.total.name})",
        namer=perm_to_cycles,
        check=False,
    )
    result = DeckGroup(group, tuple(transformations), len(fiber), len(group) == len(fiber))
    logger.bind(total=cover.total.name, order=len(group), galois=result.galois).debug(
        "deck_group"
    )
    return result


def is_galois_cover(cover: CoveringMap, base: int = 0) -> Verdict:
    """Check if the deck group acts simply transitively on the fiber over the base."""
    deck = deck_group(cover, base)
    collector = DiagnosticCollector()
    if not deck.galois:
        collector.fail(
            f"deck group of order {len(deck.group)} on a fiber of size {deck.degree}",
            witness={"deck_order": len(deck.group), "degree": deck.degree},
        )
    return collector.verdict(deck)


def fiber_product(left: CoveringMap, right: CoveringMap) -> CoveringMap:
    """Return the pullback of left along right, as a cover of right's total graph.

    Vertices are pairs (a, b) over the same base vertex, in lexicographic order; darts likewise.

    :raises BaseMismatch: if the covers have different bases.
    """
    if left.base != right.base:
        raise BaseMismatch("covers of different graphs")
    vertices = [
        (a, b)
        for a in range(len(left.total.vertices))
        for b in range(len(right.total.vertices))
        if left.vertex_map[a] == right.vertex_map[b]
    ]
    darts = [
        (d, e)
        for d in range(left.total.num_darts)
        for e in range(right.total.num_darts)
        if left.dart_map[d] == right.dart_map[e]
    ]
    vertex_index = {pair: k for k, pair in enumerate(vertices)}
    dart_index = {pair: k for k, pair in enumerate(darts)}
    lnames, rnames = left.total.vertices, right.total.vertices
    total = Graph(
        [f"({lnames[a]},{rnames[b]})" for a, b in vertices],
        [vertex_index[(left.total.attach[d], right.total.attach[e])] for d, e in darts],
        [dart_index[(left.total.involution[d], right.total.involution[e])] for d, e in darts],
        name=f"{left.total.name}x{right.total.name}",
        check=False,
    )
    return CoveringMap(
        total, right.total, tuple(b for _, b in vertices), tuple(e for _, e in darts)
    )


def _split_over_components(pullback: CoveringMap) -> List[str]:
    """List the components of the pullback that are not sections."""
    sizes = {v: len(c) for c in pullback.base.components() for v in c}
    failures = []
    for component in pullback.total.components():
        over = pullback.vertex_map[component[0]]
        if len(component) != sizes[over]:
            failures.append(
                f"component of {pullback.total.vertices[component[0]]} has {len(component)} "
                f"vertices over a component of {sizes[over]}"
            )
    return failures


def _monodromy_factors(cover: CoveringMap, trivializer: CoveringMap) -> List[str]:
    """List the loops of the trivializer whose images act nontrivially on cover's fibers."""
    failures = []
    for component in trivializer.total.components():
        root = component[0]
        _, tree = pi1_graph(trivializer.total, root)
        anchor = trivializer.vertex_map[root]
        for generator in tree.generators:
            loop = [trivializer.dart_map[d] for d in tree.loop(generator)]
            perm = path_monodromy(cover, loop, anchor)
            if any(i != p for i, p in enumerate(perm)):
                failures.append(
                    f"loop {tree.generator_name(generator)} at "
                    f"{trivializer.total.vertices[root]} acts as {perm_to_cycles(perm)}"
                )
    return failures


def is_trivialized_by(cover: CoveringMap, trivializer: CoveringMap) -> Verdict:
    """Check if pulling a cover back along another splits it into sections.

    The pullback criterion is cross-checked against monodromy: every loop of the trivializer
    must act trivially on the fibers of the cover.

    :raises BaseMismatch: if the covers have different bases.
    :raises InvariantViolation: if the two criteria disagree.
    """
    require_cover(cover)
    require_cover(trivializer)
    pullback = fiber_product(cover, trivializer)
    split = _split_over_components(pullback)
    factors = _monodromy_factors(cover, trivializer)
    if bool(split) != bool(factors):
        logger.bind(split=split, factors=factors).error("trivialization_criteria_disagree")
        raise InvariantViolation(split + factors)
    collector = DiagnosticCollector()
    for failure in split + factors:
        collector.fail(failure)
    return collector.verdict(pullback)
