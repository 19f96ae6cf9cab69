"""Populator functions building small fixtures for testing purposes."""

from typing import Any, Dict, List, Optional, Sequence

from lcgalois.config.budget import GaloisBudgetConfig
from lcgalois.core.groups import FiniteGroup
from lcgalois.cover.covers import CoveringMap, cover_from_action
from lcgalois.cover.graphs import Graph
from lcgalois.cover.pi1 import pi1_graph
from lcgalois.exceptions import MissingParam
from lcgalois.fpgroup.actions import FiniteAction
from lcgalois.fpgroup.words import Presentation
from lcgalois.gset.gsets import GSet
from lcgalois.orbifold.actions import GraphAction
from lcgalois.tools import perm_from_cycles

GROUP_FAMILIES = {
    "cyclic": FiniteGroup.cyclic,
    "dihedral": FiniteGroup.dihedral,
    "symmetric": FiniteGroup.symmetric,
    "alternating": FiniteGroup.alternating,
}


class BasePopulator:
    """Base populator class. Builds library objects directly, no text format involved."""

    def _get_budget(self, budget: Optional[GaloisBudgetConfig] = None) -> GaloisBudgetConfig:
        """Ensure we have a budget.

        params: budget: GaloisBudgetConfig (default: self.budget if available)
        """
        if budget:
            return budget
        if hasattr(self, "budget") and self.budget:
            return self.budget

        raise MissingParam("No budget provided.")

    def create_group(self, family: str = "cyclic", n: int = 2) -> FiniteGroup:
        """Create a group of a named family.

        params: family: str (cyclic, dihedral, symmetric, alternating, quaternion, trivial)
        params: n: int (default: 2)
        """
        if family == "quaternion":
            return FiniteGroup.quaternion()
        if family == "trivial":
            return FiniteGroup.trivial()
        if family not in GROUP_FAMILIES:
            raise MissingParam(f"Group family {family} not found.")
        return GROUP_FAMILIES[family](n)

    def create_gset(
        self, group: FiniteGroup = None, kind: str = "regular", **kwargs: Any
    ) -> GSet:
        """Create a G-set over a group.

        params: group: FiniteGroup (default: Z/2)
        params: kind: str (regular, natural, trivial, cosets)
        params: kwargs: Any (points for trivial, subgroup for cosets)
        """
        group = group or self.create_group()
        if kind == "regular":
            return GSet.regular(group)
        if kind == "natural":
            return GSet.natural(group)
        if kind == "trivial":
            return GSet.trivial(group, kwargs.get("points", 1))
        if kind == "cosets":
            return GSet.cosets(group, kwargs["subgroup"])
        raise MissingParam(f"G-set kind {kind} not found.")

    def create_presentation(
        self, generators: str = "a", relators: str = "", name: str = "P"
    ) -> Presentation:
        """Create a presentation from text.

        params: generators: str (comma separated)
        params: relators: str (comma separated words)
        """
        return Presentation.parse(generators, relators, name=name)

    def create_cover(
        self, graph: Graph = None, degree: int = 2, images: Dict[str, str] = None, base: int = 0
    ) -> CoveringMap:
        """Create a cover with given monodromy; generators not named act trivially.

        params: graph: Graph (default: the one-loop cycle C1)
        params: degree: int (default: 2)
        params: images: Dict[str, str] (generator -> 1-based cycles; default: every
            generator acts by the full cycle)
        """
        graph = graph or Graph.cycle(1)
        _, tree = pi1_graph(graph, base)
        if images is None:
            cycle = "(" + " ".join(str(k + 1) for k in range(degree)) + ")"
            images = {name: cycle for name in tree.names}
        perms = tuple(perm_from_cycles(images.get(n, "()"), degree) for n in tree.names)
        return cover_from_action(graph, base, FiniteAction(tree.names, degree, perms))

    def create_reflection(self) -> GraphAction:
        """Create Z/2 acting on a single edge by swapping its ends."""
        group = self.create_group("cyclic", 2)
        graph = Graph.path(2)
        return GraphAction.from_images(group, graph, {1: ((1, 0), (1, 0))}, name="flip")

    def create_rotation(self, n: int = 3) -> GraphAction:
        """Create Z/n rotating the n-cycle; the action is free.

        params: n: int (default: 3)
        """
        group = self.create_group("cyclic", n)
        graph = Graph.cycle(n)
        vertices = tuple((k + 1) % n for k in range(n))
        darts = tuple((d + 2) % (2 * n) for d in range(2 * n))
        return GraphAction.from_images(group, graph, {1: (vertices, darts)}, name="rot")

    def create_graph(self, family: str = "theta", n: int = 3) -> Graph:
        """Create a graph of a named family.

        params: family: str (cycle, bouquet, theta, complete, path)
        params: n: int (default: 3)
        """
        families = {
            "cycle": Graph.cycle,
            "bouquet": Graph.bouquet,
            "theta": Graph.theta,
            "complete": Graph.complete,
            "path": Graph.path,
        }
        if family not in families:
            raise MissingParam(f"Graph family {family} not found.")
        return families[family](n)

    def create_group_library(self, max_order: int = 16) -> List[FiniteGroup]:
        """Create the fixture groups up to an order, smallest first.

        params: max_order: int (default: 16)
        """
        cyclic, dihedral, product = (
            FiniteGroup.cyclic,
            FiniteGroup.dihedral,
            FiniteGroup.direct_product,
        )
        groups = [FiniteGroup.trivial()]
        groups.extend(cyclic(n) for n in (2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16))
        groups.extend(dihedral(n) for n in (3, 4, 5, 6, 8))
        groups.extend(
            [
                product(cyclic(2), cyclic(2)),
                product(cyclic(2), cyclic(4)),
                product(product(cyclic(2), cyclic(2)), cyclic(2)),
                product(cyclic(3), cyclic(3)),
                product(cyclic(4), cyclic(4)),
                product(cyclic(2), dihedral(4)),
                FiniteGroup.quaternion(),
                FiniteGroup.alternating(4),
            ]
        )
        return sorted((g for g in groups if len(g) <= max_order), key=len)

    def create_graph_library(self, max_edges: int = 6) -> List[Graph]:
        """Create connected fixture graphs with at most some edges.

        params: max_edges: int (default: 6)
        """
        graphs = [Graph.path(n) for n in range(1, 7)]
        graphs.extend(Graph.cycle(n) for n in range(1, 7))
        graphs.extend(Graph.bouquet(n) for n in (2, 3))
        graphs.extend(Graph.theta(n) for n in (2, 3, 4))
        graphs.append(Graph.complete(4))
        return [g for g in graphs if len(g.edges()) <= max_edges]

    def create_action_library(self) -> List[GraphAction]:
        """Create the fixture graph actions: |G| <= 4 on connected graphs with |V| <= 4."""
        z2 = self.create_group("cyclic", 2)
        theta = Graph.theta(2)
        invert = ((1, 0), (1, 0, 3, 2))
        swap = ((0, 1), (2, 3, 0, 1))
        klein = FiniteGroup.direct_product(z2, z2)
        return [
            self.create_reflection(),
            self.create_rotation(2),
            self.create_rotation(3),
            self.create_rotation(4),
            GraphAction.trivial(Graph.theta(3)),
            GraphAction.from_images(z2, theta, {1: invert}, name="invert"),
            GraphAction.from_images(klein, theta, {1: swap, 2: invert}, name="klein"),
        ]

    def edges_of(self, graph: Graph) -> Sequence[int]:
        """Return the canonical darts of a graph."""
        return graph.edges()
