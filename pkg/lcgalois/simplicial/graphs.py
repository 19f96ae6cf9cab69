"""Simplicial graphs augmented over a base graph: Cech nerves and hypercoverings."""

from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.cover.covers import CoveringMap, CoverMorphism, require_cover
from lcgalois.cover.graphs import Graph, induced_subgraph
from lcgalois.exceptions import InvalidParam, InvariantViolation, TruncationError
from lcgalois.simplicial.sets import (
    TruncatedSimplicialSet,
    boundary_families,
    validate_simplicial,
)
from lcgalois.typing import DiagnosticCollector, Verdict

logger = structlog.getLogger("lcgalois.simplicial")


@dataclass(frozen=True, eq=False)
class SimplicialGraph:
    """A truncated simplicial object in graphs with an augmentation to a base graph.

    :ivar faces: faces[k][i] is d_i from level k to level k - 1, as vertex and dart maps.
    :ivar degeneracies: degeneracies[k][j] is s_j from level k to level k + 1.
    :ivar augmentation: The map from level 0 to the base.
    """

    base: Graph
    levels: Tuple[Graph, ...]
    faces: Tuple[Tuple[CoverMorphism, ...], ...]
    degeneracies: Tuple[Tuple[CoverMorphism, ...], ...]
    augmentation: CoverMorphism
    name: str = "S"

    @property
    def n(self) -> int:
        """Return the truncation level."""
        return len(self.levels) - 1

    def vertex_set(self) -> TruncatedSimplicialSet:
        """Return the simplicial set of vertices."""
        return TruncatedSimplicialSet(
            [graph.vertices for graph in self.levels],
            [[m.vertex_map for m in level] for level in self.faces],
            [[m.vertex_map for m in level] for level in self.degeneracies],
            name=f"V({self.name})",
            check=False,
        )

    def dart_set(self) -> TruncatedSimplicialSet:
        """Return the simplicial set of darts."""
        return TruncatedSimplicialSet(
            [graph.dart_names for graph in self.levels],
            [[m.dart_map for m in level] for level in self.faces],
            [[m.dart_map for m in level] for level in self.degeneracies],
            name=f"D({self.name})",
            check=False,
        )

    def restrict_top(self, vertices: Sequence[int], name: str = "") -> "SimplicialGraph":
        """Keep only some vertices of the top level and the darts between them.

        :raises InvalidParam: if a degeneracy lands outside the kept part.
        """
        top = self.levels[-1]
        keep = sorted(vertices)
        graph = induced_subgraph(top, keep, name=top.name)
        position = {v: k for k, v in enumerate(keep)}
        darts = [
            d
            for d in range(top.num_darts)
            if top.source(d) in position and top.target(d) in position
        ]
        dart_position = {d: k for k, d in enumerate(darts)}

        degeneracies = list(self.degeneracies)
        if self.n:
            lowered = []
            for morphism in degeneracies[-2]:
                if any(v not in position for v in morphism.vertex_map):
                    raise InvalidParam("a degenerate simplex of the top level was removed")
                lowered.append(
                    CoverMorphism(
                        tuple(position[v] for v in morphism.vertex_map),
                        tuple(dart_position[d] for d in morphism.dart_map),
                    )
                )
            degeneracies[-2] = tuple(lowered)
        faces = list(self.faces)
        faces[-1] = tuple(
            CoverMorphism(
                tuple(m.vertex_map[v] for v in keep), tuple(m.dart_map[d] for d in darts)
            )
            for m in self.faces[-1]
        )
        augmentation = self.augmentation
        if not self.n:
            augmentation = CoverMorphism(
                tuple(augmentation.vertex_map[v] for v in keep),
                tuple(augmentation.dart_map[d] for d in darts),
            )
        return SimplicialGraph(
            self.base,
            self.levels[:-1] + (graph,),
            tuple(faces),
            tuple(degeneracies),
            augmentation,
            name=name or self.name,
        )

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        return {
            "name": self.name,
            "base": self.base.name,
            "levels": [
                {
                    "level": k,
                    "vertices": len(graph.vertices),
                    "edges": graph.num_edges,
                    "components": len(graph.components()),
                }
                for k, graph in enumerate(self.levels)
            ],
        }


def _is_graph_morphism(source: Graph, target: Graph, morphism: CoverMorphism) -> bool:
    """Check that a vertex and dart map commute with attachment and involution."""
    if len(morphism.vertex_map) != len(source.vertices):
        return False
    if len(morphism.dart_map) != source.num_darts:
        return False
    return all(
        target.attach[morphism.dart_map[d]] == morphism.vertex_map[source.attach[d]]
        and morphism.dart_map[source.involution[d]] == target.involution[morphism.dart_map[d]]
        for d in range(source.num_darts)
    )


def validate_simplicial_graph(simplicial: SimplicialGraph) -> Verdict:
    """Check the simplicial identities on vertices and darts and that every map is a graph map.

    The augmentation must also satisfy e d_0 = e d_1 on level 1.
    """
    collector = DiagnosticCollector()
    levels = simplicial.levels
    for label, part in (("vertices", simplicial.vertex_set), ("darts", simplicial.dart_set)):
        sset = part()
        verdict = validate_simplicial(sset.levels, sset.faces, sset.degeneracies)
        for diagnostic in verdict.diagnostics:
            collector.fail(f"{label}: {diagnostic}", verdict.witness)
    if collector.diagnostics:
        return collector.verdict()

    for k, maps in enumerate(simplicial.faces):
        for i, morphism in enumerate(maps):
            if not _is_graph_morphism(levels[k], levels[k - 1], morphism):
                collector.fail(f"d_{i} at level {k} is not a graph morphism", {"level": k})
    for k, maps in enumerate(simplicial.degeneracies):
        for j, morphism in enumerate(maps):
            if not _is_graph_morphism(levels[k], levels[k + 1], morphism):
                collector.fail(f"s_{j} at level {k} is not a graph morphism", {"level": k})
    augmentation = simplicial.augmentation
    if not _is_graph_morphism(levels[0], simplicial.base, augmentation):
        collector.fail("the augmentation is not a graph morphism")
    elif simplicial.n:
        d0, d1 = simplicial.faces[1]
        if any(
            augmentation.vertex_map[d0.vertex_map[x]] != augmentation.vertex_map[d1.vertex_map[x]]
            for x in range(len(levels[1].vertices))
        ):
            collector.fail("the augmentation does not equalize d_0 and d_1")
    return collector.verdict(simplicial)


def cech_nerve(
    cover: CoveringMap, n: int = 2, budget: Optional[GaloisBudgetConfig] = None
) -> SimplicialGraph:
    """Return the Cech nerve of a cover up to level n.

    Level k is the (k + 1)-fold fiber product U x_X ... x_X U: vertices and darts are tuples
    over one base vertex or dart. d_i deletes the i-th entry and s_j repeats the j-th.

    :raises InvalidCover: if the map is not a covering map.
    :raises BudgetExceeded: if the levels hold more simplices than the SIMPLICES budget.
    """
    require_cover(cover)
    if n < 0:
        raise TruncationError("a Cech nerve needs level 0")
    budget = resolve_budget(budget)
    base, total = cover.base, cover.total
    vertex_fibers = [cover.fiber(v) for v in range(len(base.vertices))]
    dart_fibers: List[List[int]] = [[] for _ in range(base.num_darts)]
    for dart, image in enumerate(cover.dart_map):
        dart_fibers[image].append(dart)

    requested = sum(
        len(f) ** (k + 1) for f in vertex_fibers + dart_fibers for k in range(n + 1)
    )
    if not budget.allows("SIMPLICES", requested):
        logger.bind(cover=total.name, requested=requested).warning("simplices_refused")
    budget.enforce("SIMPLICES", requested, f"Cech nerve of {total.name}")

    vertex_keys: List[List[Tuple[int, ...]]] = []
    dart_keys: List[List[Tuple[int, ...]]] = []
    vertex_index: List[Dict[Tuple[int, ...], int]] = []
    dart_index: List[Dict[Tuple[int, ...], int]] = []
    levels: List[Graph] = []
    for k in range(n + 1):
        vertices = [t for fiber in vertex_fibers for t in product(fiber, repeat=k + 1)]
        darts = [t for fiber in dart_fibers for t in product(fiber, repeat=k + 1)]
        vertex_of = {t: position for position, t in enumerate(vertices)}
        dart_of = {t: position for position, t in enumerate(darts)}
        levels.append(
            Graph(
                ["(" + ",".join(total.vertices[u] for u in t) + ")" for t in vertices],
                [vertex_of[tuple(total.attach[d] for d in t)] for t in darts],
                [dart_of[tuple(total.involution[d] for d in t)] for t in darts],
                name=f"{total.name}^{k + 1}",
                dart_names=["(" + ",".join(total.dart_names[d] for d in t) + ")" for t in darts],
                check=False,
            )
        )
        vertex_keys.append(vertices)
        dart_keys.append(darts)
        vertex_index.append(vertex_of)
        dart_index.append(dart_of)

    def delete(k: int, i: int) -> CoverMorphism:
        return CoverMorphism(
            tuple(vertex_index[k - 1][t[:i] + t[i + 1 :]] for t in vertex_keys[k]),
            tuple(dart_index[k - 1][t[:i] + t[i + 1 :]] for t in dart_keys[k]),
        )

    def repeat(k: int, j: int) -> CoverMorphism:
        return CoverMorphism(
            tuple(vertex_index[k + 1][t[: j + 1] + t[j:]] for t in vertex_keys[k]),
            tuple(dart_index[k + 1][t[: j + 1] + t[j:]] for t in dart_keys[k]),
        )

    faces = ((),) + tuple(tuple(delete(k, i) for i in range(k + 1)) for k in range(1, n + 1))
    degeneracies = tuple(tuple(repeat(k, j) for j in range(k + 1)) for k in range(n)) + ((),)
    augmentation = CoverMorphism(
        tuple(cover.vertex_map[t[0]] for t in vertex_keys[0]),
        tuple(cover.dart_map[t[0]] for t in dart_keys[0]),
    )
    nerve = SimplicialGraph(
        base, tuple(levels), faces, degeneracies, augmentation, name=f"C({total.name})"
    )
    logger.bind(
        cover=total.name, n=n, vertices=[len(g.vertices) for g in levels]
    ).debug("cech_nerve")
    return nerve


def is_hypercovering(simplicial: SimplicialGraph, level: Optional[int] = None) -> Verdict:
    """Check that every comparison map to a coskeleton is onto, up to a level.

    On vertices and on darts: level 0 must cover the base, level 1 must reach every pair over
    one base simplex, and level k + 1 >= 2 must reach every compatible boundary family of
    level k simplices.

    :raises TruncationError: if the level is above the truncation.
    """
    top = simplicial.n if level is None else level
    if top > simplicial.n:
        raise TruncationError(
            f"{simplicial.name} is truncated at {simplicial.n}; level {top} cannot be tested"
        )
    collector = DiagnosticCollector()
    base, augmentation = simplicial.base, simplicial.augmentation
    sides = (
        ("vertices", simplicial.vertex_set(), augmentation.vertex_map, len(base.vertices)),
        ("darts", simplicial.dart_set(), augmentation.dart_map, base.num_darts),
    )
    for label, sset, image, base_size in sides:
        missing = sorted(set(range(base_size)) - set(image))
        if missing:
            collector.fail(f"{label}: level 0 does not cover the base", {"missing": missing})
            continue
        for k in range(1, top + 1):
            reached = {
                tuple(sset.faces[k][i][x] for i in range(k + 1)) for x in range(sset.size(k))
            }
            if k == 1:
                targets = [
                    (a, b)
                    for a in range(sset.size(0))
                    for b in range(sset.size(0))
                    if image[a] == image[b]
                ]
            else:
                targets = boundary_families(
                    range(sset.size(k - 1)),
                    k + 1,
                    lambda i, x, faces=sset.faces[k - 1]: faces[i][x],
                )
            unreached = [t for t in targets if t not in reached]
            if unreached:
                collector.fail(
                    f"{label}: level {k} misses a boundary family",
                    {"level": k, "family": [sset.levels[k - 1][x] for x in unreached[0]]},
                )
    verdict = collector.verdict(simplicial)
    logger.bind(simplicial=simplicial.name, level=top, ok=verdict.ok).debug("is_hypercovering")
    return verdict


def pi0_levelwise(simplicial: SimplicialGraph) -> TruncatedSimplicialSet:
    """Apply connected components levelwise.

    A component is named after its least vertex, in brackets.
    """
    components = [graph.components() for graph in simplicial.levels]
    component_of = [
        {v: position for position, c in enumerate(level) for v in c} for level in components
    ]

    def induced(k: int, target: int, morphism: CoverMorphism) -> Tuple[int, ...]:
        return tuple(
            component_of[target][morphism.vertex_map[c[0]]] for c in components[k]
        )

    result = TruncatedSimplicialSet(
        [
            ["[" + graph.vertices[c[0]] + "]" for c in level]
            for graph, level in zip(simplicial.levels, components)
        ],
        [[induced(k, k - 1, m) for m in maps] for k, maps in enumerate(simplicial.faces)],
        [[induced(k, k + 1, m) for m in maps] for k, maps in enumerate(simplicial.degeneracies)],
        name=f"pi0({simplicial.name})",
        check=False,
    )
    logger.bind(simplicial=simplicial.name, sizes=result.sizes).debug("pi0_levelwise")
    return result


def require_simplicial_graph(simplicial: SimplicialGraph) -> None:
    """Refuse a broken simplicial graph.

    :raises InvariantViolation: with the diagnostics of validate_simplicial_graph.
    """
    verdict = validate_simplicial_graph(simplicial)
    if not verdict:
        raise InvariantViolation(verdict.diagnostics)
