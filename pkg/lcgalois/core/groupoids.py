"""Finite groupoids and their morphisms.

Composition is diagrammatic: ``compose[f, g]`` is "f, then g" and is defined exactly when the
target of f is the source of g. Undefined entries hold -1.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import structlog

from lcgalois.core.groups import FiniteGroup, GroupHomomorphism
from lcgalois.exceptions import InvalidParam, InvariantViolation
from lcgalois.typing import DiagnosticCollector, Partition, Verdict

logger = structlog.getLogger("lcgalois.core")

UNDEFINED = -1


def _padded(compose: np.ndarray) -> np.ndarray:
    """Return the compose table with an absorbing sentinel row and column for "undefined"."""
    n = compose.shape[0]
    padded = np.full((n + 1, n + 1), n, dtype=np.int64)
    padded[:n, :n] = np.where(compose < 0, n, compose)
    return padded


def validate_groupoid(
    objects: Sequence[str],
    morphisms: Sequence[str],
    source: Sequence[int],
    target: Sequence[int],
    compose: Sequence[Sequence[int]],
    identity: Sequence[int],
    inverse: Sequence[int],
    name: str = "G",
) -> Verdict:
    """Validate raw groupoid data.

    Returns a verdict carrying the groupoid when every axiom holds, otherwise one diagnostic
    per violation naming the axiom and the witnessing morphisms.
    """
    collector = DiagnosticCollector()
    n_objects, n = len(objects), len(morphisms)
    table = np.asarray(compose, dtype=np.int64).reshape(n, n) if n else np.zeros((0, 0), int)

    if len(source) != n or len(target) != n or len(inverse) != n:
        collector.fail("source, target and inverse must list every morphism")
        return collector.verdict()
    if len(identity) != n_objects:
        collector.fail("identity must list one morphism per object")
        return collector.verdict()
    if any(not 0 <= o < n_objects for o in list(source) + list(target)):
        collector.fail("source or target outside the object range")
        return collector.verdict()
    if any(not 0 <= m < n for m in list(identity) + list(inverse)) or (
        table.size and (table.max() >= n or table.min() < UNDEFINED)
    ):
        collector.fail("morphism index outside the morphism range")
        return collector.verdict()

    src = np.asarray(source, dtype=np.int64)
    tgt = np.asarray(target, dtype=np.int64)
    composable = tgt[:, None] == src[None, :]

    for f, g in np.argwhere(composable != (table >= 0)):
        state = "undefined" if composable[f, g] else "defined"
        collector.fail(
            f"composition {state} at ({morphisms[f]},{morphisms[g]})",
            witness={"pair": [morphisms[f], morphisms[g]]},
        )
    for f, g in np.argwhere(composable & (table >= 0)):
        h = table[f, g]
        if src[h] != src[f] or tgt[h] != tgt[g]:
            collector.fail(
                f"composite of ({morphisms[f]},{morphisms[g]}) has wrong endpoints",
                witness={"pair": [morphisms[f], morphisms[g]]},
            )
    if collector.diagnostics:
        return collector.verdict()

    for o, unit in enumerate(identity):
        neutral = src[unit] == o and tgt[unit] == o
        if neutral:
            into = np.flatnonzero(tgt == o)
            out_of = np.flatnonzero(src == o)
            neutral = bool(
                (table[into, unit] == into).all() and (table[unit, out_of] == out_of).all()
            )
        if not neutral:
            collector.fail(
                f"identity not neutral at object {objects[o]}", witness={"object": objects[o]}
            )

    for m, m_inv in enumerate(inverse):
        if not (
            src[m_inv] == tgt[m]
            and table[m, m_inv] == identity[src[m]]
            and table[m_inv, m] == identity[tgt[m]]
        ):
            collector.fail(
                f"missing inverse for {morphisms[m]}", witness={"morphism": morphisms[m]}
            )

    padded = _padded(table)
    everything = np.arange(n + 1)
    left = padded[padded[:, :, None], everything[None, None, :]]
    right = padded[everything[:, None, None], padded[None, :, :]]
    triples = (padded[:, :, None] < n) & (padded[None, :, :] < n)
    for f, g, h in np.argwhere((left != right) & triples)[:3]:
        triple = (morphisms[f], morphisms[g], morphisms[h])
        collector.fail(f"non-associative at {triple}", witness={"triple": list(triple)})

    if collector.diagnostics:
        return collector.verdict()
    return collector.verdict(
        FiniteGroupoid(objects, morphisms, source, target, table, identity, inverse, name)
    )


class FiniteGroupoid:
    """A finite groupoid with an explicit composition table."""

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[str],
        source: Sequence[int],
        target: Sequence[int],
        compose: Sequence[Sequence[int]],
        identity: Sequence[int],
        inverse: Sequence[int],
        name: str = "G",
    ) -> None:
        """Store groupoid data without validating it; see ``create``."""
        self.name = name
        self.objects: Tuple[str, ...] = tuple(objects)
        self.morphisms: Tuple[str, ...] = tuple(morphisms)
        self.source: Tuple[int, ...] = tuple(int(o) for o in source)
        self.target: Tuple[int, ...] = tuple(int(o) for o in target)
        n = len(self.morphisms)
        self.compose = np.array(compose, dtype=np.int64).reshape(n, n)
        self.compose.setflags(write=False)
        self.identity: Tuple[int, ...] = tuple(int(m) for m in identity)
        self.inverse: Tuple[int, ...] = tuple(int(m) for m in inverse)

    @classmethod
    def create(cls, *args, **kwargs) -> "FiniteGroupoid":
        """Validate raw data and build the groupoid.

        :raises InvariantViolation: listing every violated axiom.
        """
        verdict = validate_groupoid(*args, **kwargs)
        if not verdict:
            raise InvariantViolation(verdict.diagnostics)
        return verdict.value

    def __repr__(self) -> str:
        """Return a short representation."""
        return (
            f"FiniteGroupoid({self.name!r}, objects={len(self.objects)}, "
            f"morphisms={len(self.morphisms)})"
        )

    def __eq__(self, other: object) -> bool:
        """Compare all structure."""
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.source == other.source
            and self.target == other.target
            and self.identity == other.identity
            and np.array_equal(self.compose, other.compose)
        )

    def __hash__(self) -> int:
        """Hash the structure."""
        return hash((self.objects, self.morphisms, self.compose.tobytes()))

    def object_index(self, name: str) -> int:
        """Return the index of a named object."""
        try:
            return self.objects.index(name)
        except ValueError as exc:
            raise InvalidParam(f"{name!r} is not an object of {self.name}") from exc

    def hom(self, x: int, y: int) -> List[int]:
        """Return the morphisms x -> y."""
        return [
            m for m in range(len(self.morphisms)) if self.source[m] == x and self.target[m] == y
        ]

    def then(self, f: int, g: int) -> int:
        """Return "f, then g".

        :raises InvalidParam: if the pair is not composable.
        """
        result = int(self.compose[f, g])
        if result == UNDEFINED:
            raise InvalidParam(f"({self.morphisms[f]},{self.morphisms[g]}) are not composable")
        return result

    def vertex_group(self, obj: int) -> Tuple[FiniteGroup, Tuple[int, ...]]:
        """Return the automorphism group Hom(obj, obj) and its morphism indices.

        The identity of the object comes first, the rest in morphism order.
        """
        loops = self.hom(obj, obj)
        loops.remove(self.identity[obj])
        members = [self.identity[obj]] + loops
        position = {m: index for index, m in enumerate(members)}
        table = [[position[int(self.compose[a, b])] for b in members] for a in members]
        group = FiniteGroup(
            [self.morphisms[m] for m in members],
            table,
            name=f"{self.name}({self.objects[obj]})",
            check=False,
        )
        return group, tuple(members)

    @classmethod
    def from_group(cls, group: FiniteGroup) -> "FiniteGroupoid":
        """Return a group as a groupoid with the single object "*"."""
        n = len(group)
        return cls(
            ["*"],
            group.elements,
            [0] * n,
            [0] * n,
            group.table,
            [0],
            [int(i) for i in group.inverse],
            name=group.name,
        )

    @classmethod
    def discrete(cls, objects: Sequence[str], name: str = "D") -> "FiniteGroupoid":
        """Return the groupoid whose only morphisms are identities."""
        n = len(objects)
        compose = np.full((n, n), UNDEFINED, dtype=np.int64)
        np.fill_diagonal(compose, np.arange(n))
        return cls(
            objects,
            [f"id_{o}" for o in objects],
            range(n),
            range(n),
            compose,
            range(n),
            range(n),
            name=name,
        )

    @classmethod
    def pair(cls, objects: Sequence[str], name: str = "P") -> "FiniteGroupoid":
        """Return the groupoid with exactly one morphism between any two objects.

        The morphism x -> y has index x * |objects| + y.
        """
        n = len(objects)
        pairs = [(x, y) for x in range(n) for y in range(n)]
        compose = np.full((n * n, n * n), UNDEFINED, dtype=np.int64)
        for f, (x, y) in enumerate(pairs):
            for z in range(n):
                compose[f, y * n + z] = x * n + z
        return cls(
            objects,
            [f"{objects[x]}->{objects[y]}" for x, y in pairs],
            [x for x, _ in pairs],
            [y for _, y in pairs],
            compose,
            [x * n + x for x in range(n)],
            [y * n + x for x, y in pairs],
            name=name,
        )


def connected_components(groupoid: FiniteGroupoid) -> Partition:
    """Return the connected components of a groupoid as blocks of object indices.

    Blocks are ordered by least object.
    """
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(len(groupoid.objects)))
    graph.add_edges_from(zip(groupoid.source, groupoid.target))
    return sorted(tuple(sorted(block)) for block in nx.connected_components(graph))


@dataclass(frozen=True, eq=False)
class GroupoidMorphism:
    """A functor between finite groupoids, given by its object and morphism maps."""

    source: FiniteGroupoid
    target: FiniteGroupoid
    object_map: Tuple[int, ...]
    morphism_map: Tuple[int, ...]

    def then(self, other: "GroupoidMorphism") -> "GroupoidMorphism":
        """Return the composite "self, then other"."""
        return GroupoidMorphism(
            self.source,
            other.target,
            tuple(other.object_map[o] for o in self.object_map),
            tuple(other.morphism_map[m] for m in self.morphism_map),
        )

    @classmethod
    def identity(cls, groupoid: FiniteGroupoid) -> "GroupoidMorphism":
        """Return the identity functor."""
        return cls(
            groupoid,
            groupoid,
            tuple(range(len(groupoid.objects))),
            tuple(range(len(groupoid.morphisms))),
        )

    def restrict_to_vertex_group(self, obj: int) -> GroupHomomorphism:
        """Return the induced homomorphism Hom(obj, obj) -> Hom(f obj, f obj)."""
        source_group, source_members = self.source.vertex_group(obj)
        target_group, target_members = self.target.vertex_group(self.object_map[obj])
        position = {m: index for index, m in enumerate(target_members)}
        images = tuple(position[self.morphism_map[m]] for m in source_members)
        return GroupHomomorphism(source_group, target_group, images)


def validate_morphism(morphism: GroupoidMorphism) -> Verdict:
    """Check that a morphism preserves sources, targets, identities and composition."""
    collector = DiagnosticCollector()
    source, target = morphism.source, morphism.target
    if len(morphism.object_map) != len(source.objects) or len(morphism.morphism_map) != len(
        source.morphisms
    ):
        collector.fail("object or morphism map does not cover the source groupoid")
        return collector.verdict()

    for m, image in enumerate(morphism.morphism_map):
        if (
            target.source[image] != morphism.object_map[source.source[m]]
            or target.target[image] != morphism.object_map[source.target[m]]
        ):
            collector.fail(
                f"endpoints not preserved by {source.morphisms[m]}",
                witness={"morphism": source.morphisms[m]},
            )
    for o, unit in enumerate(source.identity):
        if morphism.morphism_map[unit] != target.identity[morphism.object_map[o]]:
            collector.fail(
                f"identity not preserved at object {source.objects[o]}",
                witness={"object": source.objects[o]},
            )
    if collector.diagnostics:
        return collector.verdict()

    images = np.asarray(morphism.morphism_map, dtype=np.int64)
    for f, g in np.argwhere(source.compose >= 0):
        if images[source.compose[f, g]] != target.compose[images[f], images[g]]:
            pair = (source.morphisms[f], source.morphisms[g])
            collector.fail(f"composition not preserved at {pair}", witness={"pair": list(pair)})
            break
    return collector.verdict(morphism)


def is_quotient_morphism(morphism: GroupoidMorphism) -> Verdict:
    """Check that a morphism is bijective on objects and onto on every hom-set.

    On failure the witness names the pair of objects and a morphism that is not hit.
    """
    source, target = morphism.source, morphism.target
    if sorted(morphism.object_map) != list(range(len(target.objects))):
        return Verdict(
            ok=False,
            diagnostics=("object map is not bijective",),
            witness={"object_map": list(morphism.object_map)},
        )

    hit: Dict[Tuple[int, int], set] = {}
    for m, image in enumerate(morphism.morphism_map):
        key = (source.source[m], source.target[m])
        hit.setdefault(key, set()).add(image)

    n = len(source.objects)
    for x in range(n):
        for y in range(n):
            fx, fy = morphism.object_map[x], morphism.object_map[y]
            missing = [m for m in target.hom(fx, fy) if m not in hit.get((x, y), set())]
            if missing:
                logger.bind(
                    source=source.name, target=target.name, unhit=target.morphisms[missing[0]]
                ).debug("hom_set_not_onto")
                return Verdict(
                    ok=False,
                    diagnostics=(
                        f"Hom({source.objects[x]},{source.objects[y]}) misses "
                        f"{target.morphisms[missing[0]]}",
                    ),
                    witness={
                        "objects": [source.objects[x], source.objects[y]],
                        "unhit": target.morphisms[missing[0]],
                    },
                )
    return Verdict(ok=True, value=morphism)


def connecting_morphism(groupoid: FiniteGroupoid, x: int, y: int) -> Optional[int]:
    """Return a morphism x -> y, or None when x and y lie in different components.

    This is the identity when x = y and the least morphism otherwise.
    """
    if x == y:
        return groupoid.identity[x]
    candidates = groupoid.hom(x, y)
    return candidates[0] if candidates else None
