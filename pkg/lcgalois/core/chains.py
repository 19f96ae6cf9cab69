"""Strict chains of finite groupoids and hom-sets in their classifying category."""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog

from lcgalois.core.groupoids import (
    FiniteGroupoid,
    GroupoidMorphism,
    connected_components,
    connecting_morphism,
    is_quotient_morphism,
    validate_morphism,
)
from lcgalois.core.groups import FiniteGroup, GroupHomomorphism
from lcgalois.exceptions import GroupMismatch, InvalidParam
from lcgalois.gset.gsets import GSet, equivariant_maps, require_connected
from lcgalois.typing import DiagnosticCollector, Mapping, Verdict

logger = structlog.getLogger("lcgalois.core")


@dataclass(frozen=True, eq=False)
class ProGroupoidChain:
    """A chain G_0 <- G_1 <- ... of finite groupoids.

    ``transitions[k]`` maps level k + 1 to level k.
    """

    levels: Tuple[FiniteGroupoid, ...]
    transitions: Tuple[GroupoidMorphism, ...]

    def __len__(self) -> int:
        """Return the number of levels."""
        return len(self.levels)

    @classmethod
    def from_groups(
        cls, groups: Sequence[FiniteGroup], projections: Sequence[Sequence[int]]
    ) -> "ProGroupoidChain":
        """Build a chain of one-object levels.

        ``projections[k]`` lists the image in groups[k] of every element of groups[k + 1].
        """
        if len(projections) != max(len(groups) - 1, 0):
            raise InvalidParam("a chain of n groups needs n - 1 projections")
        homomorphisms = [
            GroupHomomorphism(groups[k + 1], groups[k], tuple(images))
            for k, images in enumerate(projections)
        ]
        return cls.from_homomorphisms(groups, homomorphisms)

    @classmethod
    def from_homomorphisms(
        cls, groups: Sequence[FiniteGroup], homomorphisms: Sequence[GroupHomomorphism]
    ) -> "ProGroupoidChain":
        """Build a chain of one-object levels from homomorphisms level k + 1 -> level k."""
        levels = tuple(group.as_groupoid() for group in groups)
        transitions = tuple(
            GroupoidMorphism(levels[k + 1], levels[k], (0,), tuple(h.images))
            for k, h in enumerate(homomorphisms)
        )
        return cls(levels, transitions)

    def transition(self, upper: int, lower: int) -> GroupoidMorphism:
        """Return the composite transition from level upper down to level lower."""
        if not 0 <= lower <= upper < len(self.levels):
            raise InvalidParam(f"no transition from level {upper} to level {lower}")
        morphism = GroupoidMorphism.identity(self.levels[upper])
        for k in range(upper - 1, lower - 1, -1):
            morphism = morphism.then(self.transitions[k])
        return morphism


def validate_chain(chain: ProGroupoidChain) -> Verdict:
    """Check that every transition is a quotient morphism.

    The witness names the upper level of the first failing transition.
    """
    collector = DiagnosticCollector()
    if not chain.levels:
        collector.fail("chain has no levels")
        return collector.verdict()
    if len(chain.transitions) != len(chain.levels) - 1:
        collector.fail("chain needs one transition per pair of adjacent levels")
        return collector.verdict()

    for k, transition in enumerate(chain.transitions):
        level = k + 1
        if transition.source != chain.levels[level] or transition.target != chain.levels[k]:
            collector.fail(f"level {level}: transition does not map level {level} to level {k}")
            continue
        functor = validate_morphism(transition)
        if not functor:
            for diagnostic in functor.diagnostics:
                collector.fail(f"level {level}: {diagnostic}", witness={"level": level})
            continue
        quotient = is_quotient_morphism(transition)
        if not quotient:
            collector.fail(
                f"level {level}: {quotient.diagnostics[0]}",
                witness={"level": level, **quotient.witness},
            )

    verdict = collector.verdict(chain)
    logger.bind(levels=len(chain.levels), ok=verdict.ok).debug("chain_validated")
    return verdict


def _conjugation(groupoid: FiniteGroupoid, start: int, end: int) -> GroupHomomorphism:
    """Return Hom(start, start) -> Hom(end, end), g -> m^-1 g m for a morphism m: start -> end."""
    source, source_members = groupoid.vertex_group(start)
    target, target_members = groupoid.vertex_group(end)
    path = connecting_morphism(groupoid, start, end)
    back = groupoid.inverse[path]
    position = {m: index for index, m in enumerate(target_members)}
    images = tuple(
        position[groupoid.then(groupoid.then(back, g), path)] for g in source_members
    )
    return GroupHomomorphism(source, target, images)


def _pull_to_level(
    chain: ProGroupoidChain, gset: GSet, level: int, obj: int, upper: int
) -> Tuple[GSet, int]:
    """Pull an action of the vertex group at (level, obj) back to level upper.

    The result is an action of the vertex group at the least object of the component; that
    object is returned alongside.
    """
    vertex_group, _ = chain.levels[level].vertex_group(obj)
    if gset.group != vertex_group:
        raise GroupMismatch(
            f"{gset.name} is not acted on by the vertex group at level {level}, object {obj}"
        )

    down = chain.transition(upper, level)
    preimage = down.object_map.index(obj)
    groupoid = chain.levels[upper]
    least = next(block for block in connected_components(groupoid) if preimage in block)[0]
    restriction = _conjugation(groupoid, least, preimage).then(
        down.restrict_to_vertex_group(preimage)
    )
    return gset.pullback(restriction), least


@dataclass(frozen=True, eq=False)
class ClassifyingHom:
    """Equivariant maps between two actions pulled back to a common level."""

    level: int
    source: Optional[GSet]
    target: Optional[GSet]
    maps: List[Mapping]

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        maps = [list(m) for m in self.maps]
        return {"level": self.level, "count": len(self.maps), "maps": maps}


def classifying_hom(
    chain: ProGroupoidChain,
    source: GSet,
    source_level: int,
    target: GSet,
    target_level: int,
    source_object: int = 0,
    target_object: int = 0,
    at_level: Optional[int] = None,
) -> ClassifyingHom:
    """Compute Hom((X, G_i), (Y, G_j)) as maps of actions of G_k, k = max(i, j).

    Each action is given for the vertex group at one object of its level. Actions on different
    components at level k have no maps between them.

    :param at_level: Compute at this level instead; any level >= max(i, j) gives the same set.
    :raises NotConnected: if either action has more than one orbit.
    """
    require_connected(source, "X")
    require_connected(target, "Y")
    upper = max(source_level, target_level) if at_level is None else at_level
    if upper < max(source_level, target_level) or upper >= len(chain.levels):
        raise InvalidParam(f"cannot compute the hom-set at level {upper}")

    pulled_source, source_root = _pull_to_level(
        chain, source, source_level, source_object, upper
    )
    pulled_target, target_root = _pull_to_level(
        chain, target, target_level, target_object, upper
    )
    if source_root != target_root:
        logger.bind(level=upper, source=source_root, target=target_root).debug(
            "different_components"
        )
        return ClassifyingHom(upper, pulled_source, pulled_target, [])

    maps = equivariant_maps(pulled_source, pulled_target)
    logger.bind(level=upper, maps=len(maps)).debug("classifying_hom")
    return ClassifyingHom(upper, pulled_source, pulled_target, maps)
