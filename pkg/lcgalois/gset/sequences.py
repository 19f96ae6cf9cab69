"""Exact sequences and automorphism counts for G-sets."""

from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, List, Tuple

import structlog

from lcgalois.core.groups import FiniteGroup, GroupHomomorphism
from lcgalois.exceptions import NotGalois
from lcgalois.gset.gsets import (
    EquivariantMap,
    GSet,
    aut_group,
    count_automorphisms,
    count_endomorphisms,
    equivariant_maps,
    is_galois,
    stabilizer_elements,
)
from lcgalois.typing import Mapping

logger = structlog.getLogger("lcgalois.gset")


@dataclass(frozen=True, eq=False)
class ExactSequence:
    """1 -> H -> G -> Aut Y -> 1 for a Galois G-set Y with base point a.

    :ivar stabilizer: H, as element indices of G.
    :ivar aut: Aut Y with diagrammatic multiplication.
    :ivar automorphisms: The elements of Aut Y as image tuples.
    :ivar phi: g -> the automorphism sending a to g.a.
    :ivar certificate: The checked claims, by name.
    """

    gset: GSet
    point: int
    stabilizer: Tuple[int, ...]
    aut: FiniteGroup
    automorphisms: List[Mapping]
    phi: GroupHomomorphism
    certificate: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Check if every claim of the certificate holds."""
        return all(self.certificate.values())

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        group = self.gset.group
        return {
            "group": group.name,
            "order": len(group),
            "point": self.gset.carrier[self.point],
            "stabilizer": [group.elements[h] for h in self.stabilizer],
            "aut_order": len(self.aut),
            "phi": {
                group.elements[g]: list(self.automorphisms[image])
                for g, image in enumerate(self.phi.images)
            },
            "certificate": dict(self.certificate),
        }


def galois_exact_sequence(gset: GSet, point: int = 0) -> ExactSequence:
    """Build Phi: G -> Aut Y for a Galois G-set and certify the exact sequence.

    :raises NotGalois: if Y is not Galois.
    :raises PointNotInCarrier: if the point is not in Y.
    """
    gset.check_point(point)
    verdict = is_galois(gset)
    if not verdict:
        logger.bind(gset=gset.name, reason=verdict.diagnostics).warning("not_galois")
        raise NotGalois(f"{gset.name} not Galois")

    group = gset.group
    members = stabilizer_elements(gset, point)
    aut, automorphisms = aut_group(gset)
    by_image = {phi[point]: index for index, phi in enumerate(automorphisms)}
    images = tuple(by_image[gset.apply(g, point)] for g in range(len(group)))
    phi = GroupHomomorphism(group, aut, images)

    certificate = {
        "homomorphism": phi.validate().ok,
        "surjective": phi.is_surjective(),
        "kernel_is_stabilizer": phi.kernel() == members,
        "stabilizer_normal": group.is_normal(members),
        "order_identity": len(group) == len(members) * len(aut),
    }
    logger.bind(gset=gset.name, **certificate).debug("exact_sequence")
    return ExactSequence(gset, point, members, aut, automorphisms, phi, certificate)


@dataclass(frozen=True)
class AutCardReport:
    """Automorphism counts of G as a G'-set through f: G' -> G.

    :ivar automorphisms: |Aut_{G'}(G)|, counted exhaustively.
    :ivar formula: |Im f|^k * k! with k = [G : Im f].
    :ivar endomorphisms: |End_{G'}(G)|.
    :ivar onto: The verdict: right translations G -> End_{G'}(G) are bijective.
    :ivar aut_criterion: |Aut_{G'}(G)| = |G|.
    :ivar surjective: f is onto as a map of sets.
    """

    source_order: int
    target_order: int
    image_order: int
    index: int
    automorphisms: int
    formula: int
    endomorphisms: int
    onto: bool
    aut_criterion: bool
    surjective: bool

    @property
    def formula_matches(self) -> bool:
        """Check the count against the closed formula."""
        return self.automorphisms == self.formula

    @property
    def verdict_agrees(self) -> bool:
        """Check the onto verdict against surjectivity of f."""
        return self.onto == self.surjective

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        return {
            "source_order": self.source_order,
            "target_order": self.target_order,
            "image_order": self.image_order,
            "index": self.index,
            "automorphisms": self.automorphisms,
            "formula": self.formula,
            "formula_matches": self.formula_matches,
            "endomorphisms": self.endomorphisms,
            "onto": self.onto,
            "aut_criterion": self.aut_criterion,
            "surjective": self.surjective,
            "verdict_agrees": self.verdict_agrees,
        }


def restriction_aut_card(
    homomorphism: GroupHomomorphism, enumerate_maps: bool = False
) -> AutCardReport:
    """Count the automorphisms of G acted on by G' through f and decide whether f is onto.

    G' acts by g'.x = f(g')x. The right translations x -> (y -> yx) are always G'-equivariant
    and injective; f is reported onto when they exhaust End_{G'}(G).

    :param enumerate_maps: Count by listing every equivariant bijection instead of counting
        orbit matchings.
    """
    target = homomorphism.target
    gset = GSet.regular(target).pullback(homomorphism, name=f"{target.name}|f")

    if enumerate_maps:
        automorphisms = len(equivariant_maps(gset, gset, bijective=True))
    else:
        automorphisms = count_automorphisms(gset)
    endomorphisms = count_endomorphisms(gset)

    translations = [
        EquivariantMap(gset, gset, tuple(target.mul(y, x) for y in range(len(target))))
        for x in range(len(target))
    ]
    translations_equivariant = all(t.validate().ok for t in translations)

    image_order = len(homomorphism.image())
    index = len(target) // image_order
    report = AutCardReport(
        source_order=len(homomorphism.source),
        target_order=len(target),
        image_order=image_order,
        index=index,
        automorphisms=automorphisms,
        formula=image_order**index * factorial(index),
        endomorphisms=endomorphisms,
        onto=translations_equivariant and endomorphisms == len(target),
        aut_criterion=automorphisms == len(target),
        surjective=homomorphism.is_surjective(),
    )
    logger.bind(
        source=homomorphism.source.name,
        target=target.name,
        automorphisms=automorphisms,
        formula=report.formula,
        endomorphisms=endomorphisms,
    ).debug("restriction_aut_card")
    return report
