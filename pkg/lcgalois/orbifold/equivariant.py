"""Equivariant covers of a graph with a group action, and their automorphisms.

An equivariant cover is a cover p: F -> X with automorphisms phi_g of F such that
p phi_g = act(g) p, phi_e = id and phi_g phi_h = phi_gh.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.core.groups import FiniteGroup, GroupHomomorphism
from lcgalois.cover.covers import (
    CoveringMap,
    CoverMorphism,
    cover_from_component_actions,
    iter_cover_isomorphisms,
    validate_cover,
)
from lcgalois.cover.graphs import Graph
from lcgalois.cover.pi1 import spanning_tree
from lcgalois.exceptions import InvariantViolation, NotConnected
from lcgalois.fpgroup.actions import FiniteAction, action_classes, enumerate_actions
from lcgalois.fpgroup.words import Presentation
from lcgalois.orbifold.actions import GraphAction, require_action
from lcgalois.tools import compose, perm_to_cycles
from lcgalois.typing import DiagnosticCollector, Verdict

logger = structlog.getLogger("lcgalois.orbifold")


@dataclass(frozen=True, eq=False)
class EquivariantCover:
    """A cover of the acted-on graph with lifts of the action.

    :ivar lifts: phi_g for every group element g, in element order.
    """

    action: GraphAction
    cover: CoveringMap
    lifts: Tuple[CoverMorphism, ...]
    name: str = "F"

    @property
    def degree(self) -> int:
        """Return the degree of the underlying cover."""
        return self.cover.degree(0)

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        group = self.action.group
        return {
            "degree": self.degree,
            "vertices": len(self.cover.total.vertices),
            "lifts": {
                group.elements[g]: perm_to_cycles(lift.vertex_map)
                for g, lift in enumerate(self.lifts)
            },
        }


def _is_automorphism(graph: Graph, lift: CoverMorphism) -> bool:
    """Check that vertex and dart maps are bijections commuting with the dart structure."""
    if sorted(lift.vertex_map) != list(range(len(graph.vertices))):
        return False
    if sorted(lift.dart_map) != list(range(graph.num_darts)):
        return False
    return all(
        graph.attach[lift.dart_map[d]] == lift.vertex_map[graph.attach[d]]
        and lift.dart_map[graph.involution[d]] == graph.involution[lift.dart_map[d]]
        for d in range(graph.num_darts)
    )


def validate_equivariant_cover(equivariant: EquivariantCover) -> Verdict:
    """Check the compatibility square, the unit triangle and the associativity square.

    Each diagnostic starts with the name of the failing diagram.
    """
    action, cover, lifts = equivariant.action, equivariant.cover, equivariant.lifts
    group = action.group
    names = group.elements
    collector = DiagnosticCollector()
    underlying = validate_cover(cover)
    if not underlying:
        for diagnostic in underlying.diagnostics:
            collector.fail(f"cover: {diagnostic}")
        return collector.verdict()
    if len(lifts) != len(group):
        collector.fail("lifts: one lift per group element is needed")
        return collector.verdict()

    total = cover.total
    for g, lift in enumerate(lifts):
        if not _is_automorphism(total, lift):
            collector.fail(f"compatibility square: phi_{names[g]} is not an automorphism")
            continue
        moved = [
            z
            for z in range(len(total.vertices))
            if cover.vertex_map[lift.vertex_map[z]] != action.vertices[g][cover.vertex_map[z]]
        ]
        moved_darts = [
            d
            for d in range(total.num_darts)
            if cover.dart_map[lift.dart_map[d]] != action.darts[g][cover.dart_map[d]]
        ]
        if moved or moved_darts:
            collector.fail(
                f"compatibility square: p phi_{names[g]} != act({names[g]}) p",
                {"g": names[g], "vertices": [total.vertices[z] for z in moved]},
            )
    if collector.diagnostics:
        return collector.verdict()

    identity = lifts[0]
    if identity.vertex_map != tuple(range(len(total.vertices))) or identity.dart_map != tuple(
        range(total.num_darts)
    ):
        collector.fail(f"unit triangle: phi_{names[0]} is not the identity", {"g": names[0]})

    for g in range(len(group)):
        for h in range(len(group)):
            gh = group.mul(g, h)
            composite = compose(lifts[h].vertex_map, lifts[g].vertex_map)
            composite_darts = compose(lifts[h].dart_map, lifts[g].dart_map)
            if composite != lifts[gh].vertex_map or composite_darts != lifts[gh].dart_map:
                witness = next(
                    (
                        total.vertices[z]
                        for z in range(len(total.vertices))
                        if composite[z] != lifts[gh].vertex_map[z]
                    ),
                    None,
                )
                collector.fail(
                    f"associativity square: phi_{names[g]} phi_{names[h]} != phi_{names[gh]}",
                    {"g": names[g], "h": names[h], "vertex": witness},
                )
    verdict = collector.verdict(equivariant)
    logger.bind(cover=equivariant.name, ok=verdict.ok).debug("equivariant_cover_validated")
    return verdict


def canonical_galois_cover(action: GraphAction) -> EquivariantCover:
    """Build G x X over X with projection (g, x) -> g.x.

    The vertex (g, x) has index g * |V| + x and the dart (g, d) has index g * |D| + d. The lift
    of h is phi_h(g, x) = (hg, x).

    :raises InvariantViolation: if the action is invalid.
    """
    require_action(action)
    group, graph = action.group, action.graph
    order, size, darts = len(group), len(graph.vertices), graph.num_darts
    total = Graph(
        [f"({g},{x})" for g in group.elements for x in graph.vertices],
        [g * size + graph.attach[d] for g in range(order) for d in range(darts)],
        [g * darts + graph.involution[d] for g in range(order) for d in range(darts)],
        name=f"{group.name}x{graph.name}",
        dart_names=[f"({g},{d})" for g in group.elements for d in graph.dart_names],
    )
    cover = CoveringMap(
        total,
        graph,
        tuple(action.vertices[g][x] for g in range(order) for x in range(size)),
        tuple(action.darts[g][d] for g in range(order) for d in range(darts)),
    )
    lifts = tuple(
        CoverMorphism(
            tuple(group.mul(h, g) * size + x for g in range(order) for x in range(size)),
            tuple(group.mul(h, g) * darts + d for g in range(order) for d in range(darts)),
        )
        for h in range(order)
    )
    logger.bind(action=action.name, degree=order).debug("canonical_galois_cover")
    return EquivariantCover(action, cover, lifts, name=f"Can({action.name})")


def canonical_automorphism(action: GraphAction, element: int) -> CoverMorphism:
    """Return Phi(h): (g, x) -> (g h^-1, h.x) on the canonical Galois cover."""
    group, graph = action.group, action.graph
    order, size, darts = len(group), len(graph.vertices), graph.num_darts
    inverse = group.inv(element)
    return CoverMorphism(
        tuple(
            group.mul(g, inverse) * size + action.vertices[element][x]
            for g in range(order)
            for x in range(size)
        ),
        tuple(
            group.mul(g, inverse) * darts + action.darts[element][d]
            for g in range(order)
            for d in range(darts)
        ),
    )


def groupoid_components(equivariant: EquivariantCover) -> List[Tuple[int, ...]]:
    """Return the classes of total vertices joined by edges or by some lift."""
    total = equivariant.cover.total
    graph = total.as_networkx()
    for lift in equivariant.lifts:
        graph.add_edges_from((z, lift.vertex_map[z]) for z in range(len(total.vertices)))
    return sorted(tuple(sorted(c)) for c in nx.connected_components(graph))


def is_groupoid_connected(equivariant: EquivariantCover) -> bool:
    """Check if the equivariant cover is connected as an equivariant object."""
    return len(groupoid_components(equivariant)) == 1


def _commutes(left: EquivariantCover, right: EquivariantCover, psi: CoverMorphism) -> bool:
    """Check psi phi_g = phi'_g psi for every g, on vertices."""
    return all(
        compose(a.vertex_map, psi.vertex_map) == compose(psi.vertex_map, b.vertex_map)
        for a, b in zip(left.lifts, right.lifts)
    )


def equivariant_isomorphisms(
    left: EquivariantCover, right: EquivariantCover
) -> List[CoverMorphism]:
    """Return the cover isomorphisms commuting with the lifts."""
    return [
        psi
        for psi in iter_cover_isomorphisms(left.cover, right.cover)
        if _commutes(left, right, psi)
    ]


def _check_size(action: GraphAction, budget: Optional[GaloisBudgetConfig]) -> None:
    """Refuse actions over the EQUIVARIANT_SIZE budget."""
    budget = resolve_budget(budget)
    requested = len(action.group) * len(action.graph.vertices)
    if not budget.allows("EQUIVARIANT_SIZE", requested):
        logger.bind(action=action.name, requested=requested).warning("equivariant_size_refused")
    budget.enforce("EQUIVARIANT_SIZE", requested, "equivariant enumeration |G|*|V|")


@dataclass(frozen=True, eq=False)
class EquivariantAut:
    """Aut of an equivariant cover, with the checks available for the canonical Galois cover.

    :ivar group: The automorphisms; a * b is "a then b".
    :ivar phi_image: Whether the automorphisms are exactly the Phi(h).
    :ivar isomorphism: h -> Phi(h^-1), when it is an isomorphism G -> Aut.
    """

    group: FiniteGroup
    automorphisms: Tuple[CoverMorphism, ...]
    phi_image: Optional[bool]
    isomorphism: Optional[GroupHomomorphism]

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        return {
            "order": len(self.group),
            "elements": list(self.group.elements),
            "phi_image": self.phi_image,
            "isomorphic_to_group": self.isomorphism is not None,
        }


def equivariant_aut(
    equivariant: EquivariantCover,
    canonical: bool = False,
    budget: Optional[GaloisBudgetConfig] = None,
) -> EquivariantAut:
    """Enumerate the automorphisms of an equivariant cover.

    :param canonical: The cover is canonical_galois_cover(action); compare with Phi.
    :raises BudgetExceeded: if |G| * |V| is over the EQUIVARIANT_SIZE budget.
    """
    _check_size(equivariant.action, budget)
    automorphisms = sorted(
        equivariant_isomorphisms(equivariant, equivariant), key=lambda psi: psi.vertex_map
    )
    maps = [psi.vertex_map for psi in automorphisms]
    group = FiniteGroup.from_function(
        maps, compose, name=f"Aut({equivariant.name})", namer=perm_to_cycles, check=False
    )

    phi_image = None
    isomorphism = None
    if canonical:
        action = equivariant.action
        source = action.group
        phis = [canonical_automorphism(action, h) for h in range(len(source))]
        phi_image = sorted(p.vertex_map for p in phis) == maps
        if phi_image:
            position = {m: k for k, m in enumerate(maps)}
            candidate = GroupHomomorphism(
                source,
                group,
                tuple(position[phis[source.inv(h)].vertex_map] for h in range(len(source))),
            )
            if candidate.validate() and candidate.is_injective() and candidate.is_surjective():
                isomorphism = candidate

    logger.bind(cover=equivariant.name, order=len(group), phi_image=phi_image).debug(
        "equivariant_aut"
    )
    return EquivariantAut(group, tuple(automorphisms), phi_image, isomorphism)


def is_galois_equivariant(
    equivariant: EquivariantCover, budget: Optional[GaloisBudgetConfig] = None
) -> Verdict:
    """Check that (y, phi) -> (y, phi(y)) is a bijection Y x Aut -> Y x_X Y.

    The check runs on vertices and on darts.

    :raises NotConnected: if the cover is not connected as an equivariant object.
    """
    if not is_groupoid_connected(equivariant):
        logger.bind(cover=equivariant.name).warning("not_connected")
        raise NotConnected("not connected as equivariant object")

    aut = equivariant_aut(equivariant, budget=budget)
    cover = equivariant.cover
    collector = DiagnosticCollector()
    sides = (
        ("vertices", cover.vertex_map, [psi.vertex_map for psi in aut.automorphisms]),
        ("darts", cover.dart_map, [psi.dart_map for psi in aut.automorphisms]),
    )
    for label, projection, maps in sides:
        count = len(projection)
        pairs = sum(size * size for size in Counter(projection).values())
        images = {(y, phi[y]) for y in range(count) for phi in maps}
        if len(images) != count * len(maps):
            collector.fail(f"{label}: (y, phi) -> (y, phi(y)) is not injective")
        if len(images) != pairs:
            collector.fail(
                f"{label}: |Y x Aut| = {count * len(maps)} but |Y x_X Y| = {pairs}",
                {"side": label, "aut": len(maps), "pairs": pairs},
            )
    return collector.verdict(aut)


def _lift_families(
    action: GraphAction, cover: CoveringMap
) -> List[Tuple[CoverMorphism, ...]]:
    """Return every family of lifts making the cover equivariant."""
    group = action.group
    generators = group.generating_set()
    candidates = [
        list(iter_cover_isomorphisms(cover, cover, action.twist(s))) for s in generators
    ]
    words = group.words(generators)
    identity = CoverMorphism(
        tuple(range(len(cover.total.vertices))), tuple(range(cover.total.num_darts))
    )
    families = []
    for choice in product(*candidates):
        lifts = []
        for element in range(len(group)):
            lift = identity
            for position in words[element]:
                step = choice[position]
                lift = CoverMorphism(
                    compose(step.vertex_map, lift.vertex_map),
                    compose(step.dart_map, lift.dart_map),
                )
            lifts.append(lift)
        if validate_equivariant_cover(EquivariantCover(action, cover, tuple(lifts))):
            families.append(tuple(lifts))
    return families


def _component_classes(
    graph: Graph, degree: int, budget: Optional[GaloisBudgetConfig]
) -> Tuple[List[int], List[List[FiniteAction]]]:
    """Return the least vertex of each component with the action classes of its pi1."""
    bases = [component[0] for component in graph.components()]
    classes = []
    for base in bases:
        tree = spanning_tree(graph, base)
        presentation = Presentation.free(tree.names, name=f"pi1({graph.name}, {base})")
        classes.append(action_classes(enumerate_actions(presentation, degree, budget)))
    return bases, classes


def enumerate_equivariant_covers(
    action: GraphAction, degree: int, budget: Optional[GaloisBudgetConfig] = None
) -> List[EquivariantCover]:
    """Return the equivariant covers of a given degree, one per equivariant isomorphism class.

    A cover of a disconnected graph is a choice of cover over every component, so covers are
    built from one representative action of pi1 per conjugacy class at the least vertex of
    each component. Lift families on the same cover are compared by brute force. The order
    follows the canonical order of the representative actions and then the lifts.

    :raises BudgetExceeded: if the enumeration is over its budget.
    """
    require_action(action)
    _check_size(action, budget)
    bases, component_classes = _component_classes(action.graph, degree, budget)

    found: List[EquivariantCover] = []
    for representatives in product(*component_classes):
        cover = cover_from_component_actions(action.graph, dict(zip(bases, representatives)))
        classes: List[EquivariantCover] = []
        families = sorted(
            _lift_families(action, cover), key=lambda family: [f.vertex_map for f in family]
        )
        for lifts in families:
            name = f"F{len(found) + len(classes)}"
            candidate = EquivariantCover(action, cover, lifts, name=name)
            if not any(equivariant_isomorphisms(candidate, other) for other in classes):
                classes.append(candidate)
        found.extend(classes)

    logger.bind(
        action=action.name, degree=degree, components=len(bases), classes=len(found)
    ).debug("equivariant_covers")
    return found


def disjoint_union(left: EquivariantCover, right: EquivariantCover) -> EquivariantCover:
    """Return the disjoint union of two equivariant covers of the same action.

    :raises InvariantViolation: if the covers lie over different actions.
    """
    if left.action.graph != right.action.graph or left.action.group != right.action.group:
        raise InvariantViolation(["equivariant covers of different actions"])
    shift_v, shift_d = len(left.cover.total.vertices), left.cover.total.num_darts
    total = Graph.disjoint_union([left.cover.total, right.cover.total])
    cover = CoveringMap(
        total,
        left.cover.base,
        left.cover.vertex_map + right.cover.vertex_map,
        left.cover.dart_map + right.cover.dart_map,
    )
    lifts = tuple(
        CoverMorphism(
            a.vertex_map + tuple(shift_v + z for z in b.vertex_map),
            a.dart_map + tuple(shift_d + d for d in b.dart_map),
        )
        for a, b in zip(left.lifts, right.lifts)
    )
    return EquivariantCover(left.action, cover, lifts, name=f"{left.name}+{right.name}")


def trivial_equivariant_cover(action: GraphAction) -> EquivariantCover:
    """Return the identity cover of X with the action itself as lifts."""
    graph = action.graph
    cover = CoveringMap(
        graph, graph, tuple(range(len(graph.vertices))), tuple(range(graph.num_darts))
    )
    lifts = tuple(
        CoverMorphism(action.vertices[g], action.darts[g]) for g in range(len(action.group))
    )
    return EquivariantCover(action, cover, lifts, name=graph.name)


def connected_classes(covers: Sequence[EquivariantCover]) -> List[EquivariantCover]:
    """Return the covers that are connected as equivariant objects."""
    return [c for c in covers if is_groupoid_connected(c)]
