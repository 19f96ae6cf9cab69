"""Edge-path groups of simplicial sets, checked against the trivialization quotient G_R."""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.cover.covers import CoveringMap, require_cover
from lcgalois.cover.graphs import Graph
from lcgalois.cover.pi1 import pi1_graph
from lcgalois.cover.trivialization import TrivializationQuotient, trivialization_quotient
from lcgalois.exceptions import NotConnected, TruncationError
from lcgalois.fpgroup.evidence import Comparison, compare_presentations
from lcgalois.fpgroup.words import Presentation, Word, free_reduce
from lcgalois.simplicial.graphs import cech_nerve, pi0_levelwise
from lcgalois.simplicial.sets import TruncatedSimplicialSet

logger = structlog.getLogger("lcgalois.simplicial")


def edge_path_group(simplicial: TruncatedSimplicialSet, base: int = 0) -> Presentation:
    """Present the edge-path group at a vertex.

    Generators are the nondegenerate edges off a breadth-first spanning tree, named e{index}
    after the edge; every 2-simplex s gives the relator [d_2 s][d_0 s][d_1 s]^-1. Degenerate
    and tree edges are the empty word.

    :raises TruncationError: below truncation 2.
    """
    if simplicial.n < 2:
        raise TruncationError(f"{simplicial.name} is truncated below 2")
    edges = simplicial.nondegenerate(1)
    source, target = simplicial.faces[1][1], simplicial.faces[1][0]
    graph = Graph.from_edges(
        simplicial.levels[0],
        [(source[e], target[e]) for e in edges],
        name=f"|{simplicial.name}|",
    )
    _, tree = pi1_graph(graph, base)
    generator_of = {2 * position: f"e{e}" for position, e in enumerate(edges)}
    position_of = {e: position for position, e in enumerate(edges)}

    def word(edge: int) -> Word:
        if edge not in position_of or 2 * position_of[edge] not in tree.generators:
            return Word()
        return Word(((generator_of[2 * position_of[edge]], 1),))

    relators: List[Word] = []
    for simplex in range(simplicial.size(2)):
        d0, d1, d2 = (simplicial.faces[2][i][simplex] for i in range(3))
        relator = free_reduce(word(d2) * word(d0) * word(d1).inverse())
        if len(relator):
            relators.append(relator)

    presentation = Presentation(
        tuple(generator_of[d] for d in tree.generators),
        tuple(relators),
        name=f"pi1({simplicial.name})",
    )
    logger.bind(
        simplicial=simplicial.name, rank=presentation.rank, relators=len(relators)
    ).debug("edge_path_group")
    return presentation


@dataclass(frozen=True, eq=False)
class NerveQuotientReport:
    """B pi1 of the Cech nerve components against the trivialization quotient G_R.

    :ivar components: The simplicial set of levelwise components of the Cech nerve.
    :ivar edge_path: Its edge-path group A.
    :ivar quotient: G_R of the cover, B.
    """

    components: TruncatedSimplicialSet
    edge_path: Presentation
    quotient: TrivializationQuotient
    comparison: Comparison

    @property
    def ok(self) -> bool:
        """Check that the invariants of A and B agree."""
        return self.comparison.agree

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable report."""
        return {
            "ok": self.ok,
            "components": list(self.components.sizes),
            "edge_path": self.edge_path.as_dict(),
            "quotient": self.quotient.as_dict(),
            "comparison": self.comparison.as_dict(),
        }


def nerve_quotient_check(
    cover: CoveringMap,
    base: int = 0,
    degree: Optional[int] = None,
    budget: Optional[GaloisBudgetConfig] = None,
) -> NerveQuotientReport:
    """Compare the edge-path group of pi0 of the Cech nerve with G_R.

    A is computed from the 2-truncated Cech nerve alone; B is the trivialization quotient
    from the monodromy. They are compared through their abelianization and action counts.

    :raises NotConnected: if the total graph of the cover is not connected.
    :raises BudgetExceeded: if some enumeration is over its budget.
    """
    require_cover(cover)
    if not cover.total.is_connected():
        logger.bind(total=cover.total.name).warning("not_connected")
        raise NotConnected(f"{cover.total.name} not connected")
    budget = resolve_budget(budget)

    components = pi0_levelwise(cech_nerve(cover, 2, budget))
    edge_path = edge_path_group(components, 0)
    quotient = trivialization_quotient(cover, base, budget)
    comparison = compare_presentations(
        edge_path, quotient.group.presentation(), degree, budget
    )
    report = NerveQuotientReport(components, edge_path, quotient, comparison)
    logger.bind(cover=cover.total.name, order=len(quotient.group), ok=report.ok).info(
        "nerve_quotient_check"
    )
    return report
