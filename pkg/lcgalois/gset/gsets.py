"""Finite sets with a left action of a finite group."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from lcgalois.core.groupoids import FiniteGroupoid
from lcgalois.core.groups import FiniteGroup, GroupHomomorphism, subgroup_group
from lcgalois.exceptions import (
    GroupMismatch,
    InvalidParam,
    InvariantViolation,
    NotConnected,
    PointNotInCarrier,
)
from lcgalois.tools import compose, perm_orbits, perm_to_cycles
from lcgalois.typing import DiagnosticCollector, Mapping, Partition, Verdict

logger = structlog.getLogger("lcgalois.gset")


def validate_gset(
    group: FiniteGroup, carrier: Sequence[str], act: Sequence[Sequence[int]]
) -> Verdict:
    """Check the left action axioms: e.x = x and g.(h.x) = (gh).x."""
    collector = DiagnosticCollector()
    n = len(carrier)
    table = np.asarray(act, dtype=np.int64).reshape(len(group), n)
    if n and (table.min() < 0 or table.max() >= n):
        collector.fail("action table entries outside the carrier")
        return collector.verdict()

    for x in np.flatnonzero(table[0] != np.arange(n)):
        collector.fail(f"identity moves {carrier[x]}", witness={"point": carrier[x]})
    for g in range(len(group)):
        if len(set(table[g].tolist())) != n:
            collector.fail(
                f"{group.elements[g]} does not act bijectively",
                witness={"element": group.elements[g]},
            )

    left = table[:, table]
    right = table[group.table]
    for g, h, x in np.argwhere(left != right)[:3]:
        collector.fail(
            f"action not compatible at ({group.elements[g]},{group.elements[h]},{carrier[x]})",
            witness={
                "element": group.elements[g],
                "other": group.elements[h],
                "point": carrier[x],
            },
        )
    return collector.verdict()


class GSet:
    """A finite carrier with a left action; ``act[g, x]`` is the index of g.x."""

    def __init__(
        self,
        group: FiniteGroup,
        carrier: Sequence[str],
        act: Sequence[Sequence[int]],
        name: str = "X",
        check: bool = True,
    ) -> None:
        """Create a G-set.

        :raises InvariantViolation: if the table is not a left action.
        """
        if check:
            verdict = validate_gset(group, carrier, act)
            if not verdict:
                raise InvariantViolation(verdict.diagnostics)
        self.group = group
        self.name = name
        self.carrier: Tuple[str, ...] = tuple(carrier)
        self.act = np.array(act, dtype=np.int64).reshape(len(group), len(self.carrier))
        self.act.setflags(write=False)

    def __len__(self) -> int:
        """Return the size of the carrier."""
        return len(self.carrier)

    def __repr__(self) -> str:
        """Return a short representation."""
        return f"GSet({self.name!r}, group={self.group.name!r}, size={len(self)})"

    def point(self, name: str) -> int:
        """Return the index of a named point.

        :raises PointNotInCarrier: if there is no such point.
        """
        try:
            return self.carrier.index(name)
        except ValueError as exc:
            raise PointNotInCarrier(f"point {name!r} not in carrier of {self.name}") from exc

    def check_point(self, x: int) -> int:
        """Return x if it is a point of the carrier.

        :raises PointNotInCarrier: otherwise.
        """
        if not 0 <= x < len(self):
            raise PointNotInCarrier(f"point not in carrier: {x}")
        return x

    def apply(self, g: int, x: int) -> int:
        """Return g.x."""
        return int(self.act[g, x])

    def permutation(self, g: int) -> Tuple[int, ...]:
        """Return the permutation by which g acts."""
        return tuple(int(x) for x in self.act[g])

    def action_groupoid(self) -> FiniteGroupoid:
        """Return the translation groupoid: morphisms (g, x): x -> g.x.

        The morphism (g, x) has index g * |X| + x; "(g, x), then (h, g.x)" is (hg, x).
        """
        n, order = len(self), len(self.group)
        index = np.arange(order * n).reshape(order, n)
        compose = np.full((order * n, order * n), -1, dtype=np.int64)
        for g in range(order):
            for x in range(n):
                y = self.act[g, x]
                for h in range(order):
                    compose[index[g, x], index[h, y]] = index[self.group.table[h, g], x]
        return FiniteGroupoid(
            self.carrier,
            [f"{element}" for element in self.group.elements for point in self.carrier],
            [x for _ in range(order) for x in range(n)],
            [int(self.act[g, x]) for g in range(order) for x in range(n)],
            compose,
            [index[0, x] for x in range(n)],
            [index[self.group.inv(g), self.act[g, x]] for g in range(order) for x in range(n)],
            name=f"{self.group.name}x{self.name}",
        )

    # Constructors

    @classmethod
    def regular(cls, group: FiniteGroup, name: str = "") -> "GSet":
        """Return the group acting on itself by left multiplication."""
        return cls(group, group.elements, group.table, name=name or f"{group.name}", check=False)

    @classmethod
    def trivial(cls, group: FiniteGroup, points: int = 1, name: str = "") -> "GSet":
        """Return points fixed by every element."""
        act = np.tile(np.arange(points), (len(group), 1))
        return cls(group, [str(k) for k in range(points)], act, name=name or "1", check=False)

    @classmethod
    def cosets(cls, group: FiniteGroup, subgroup: Sequence[int], name: str = "") -> "GSet":
        """Return the left cosets G/H, ordered by least element, with g.(xH) = (gx)H."""
        cosets = group.left_cosets(subgroup)
        position = {element: index for index, coset in enumerate(cosets) for element in coset}
        act = [[position[group.mul(g, coset[0])] for coset in cosets] for g in range(len(group))]
        carrier = [f"{group.elements[coset[0]]}H" for coset in cosets]
        return cls(group, carrier, act, name=name or f"{group.name}/H", check=False)

    @classmethod
    def from_permutations(
        cls,
        group: FiniteGroup,
        images: Sequence[Sequence[int]],
        carrier: Sequence[str] = (),
        name: str = "X",
    ) -> "GSet":
        """Return the G-set in which element g acts by images[g]."""
        size = len(images[0]) if images else 0
        return cls(group, carrier or [str(k) for k in range(size)], images, name=name)

    @classmethod
    def natural(cls, group: FiniteGroup, name: str = "") -> "GSet":
        """Return a permutation group acting on its points 1..n.

        :raises InvalidParam: if the group carries no permutations.
        """
        if group.permutations is None:
            raise InvalidParam(f"{group.name} is not a permutation group")
        degree = len(group.permutations[0])
        return cls(
            group,
            [str(k + 1) for k in range(degree)],
            group.permutations,
            name=name or f"{group.name}.pts",
            check=False,
        )

    @classmethod
    def disjoint_union(cls, left: "GSet", right: "GSet", name: str = "") -> "GSet":
        """Return the coproduct; points of right follow those of left."""
        if left.group != right.group:
            raise GroupMismatch("disjoint union needs a common group")
        act = np.concatenate([left.act, right.act + len(left)], axis=1)
        carrier = [f"0:{x}" for x in left.carrier] + [f"1:{x}" for x in right.carrier]
        name = name or f"{left.name}+{right.name}"
        return cls(left.group, carrier, act, name=name, check=False)

    @classmethod
    def product(cls, left: "GSet", right: "GSet", name: str = "") -> "GSet":
        """Return the diagonal action on pairs; (x, y) has index x * |right| + y."""
        if left.group != right.group:
            raise GroupMismatch("product needs a common group")
        m = len(right)
        act = left.act[:, :, None] * m + right.act[:, None, :]
        act = act.reshape(len(left.group), len(left) * m)
        carrier = [f"({x},{y})" for x in left.carrier for y in right.carrier]
        name = name or f"{left.name}x{right.name}"
        return cls(left.group, carrier, act, name=name, check=False)

    def pullback(self, homomorphism: GroupHomomorphism, name: str = "") -> "GSet":
        """Return the same carrier acted on through a homomorphism into this set's group."""
        if homomorphism.target != self.group:
            raise GroupMismatch("pullback needs a homomorphism into the acting group")
        act = self.act[list(homomorphism.images)]
        return GSet(homomorphism.source, self.carrier, act, name=name or self.name, check=False)


def orbits(gset: GSet) -> Partition:
    """Return the orbit partition, blocks ordered by least point."""
    rows = [gset.act[g] for g in range(len(gset.group))]
    return perm_orbits([tuple(int(x) for x in row) for row in rows], len(gset))


def is_connected(gset: GSet) -> bool:
    """Check if the G-set has exactly one orbit; the empty G-set is not connected."""
    return len(orbits(gset)) == 1


def stabilizer_elements(gset: GSet, point: int) -> Tuple[int, ...]:
    """Return the elements fixing a point."""
    gset.check_point(point)
    return tuple(int(g) for g in np.flatnonzero(gset.act[:, point] == point))


def stabilizer(gset: GSet, point: int) -> Tuple[FiniteGroup, GroupHomomorphism]:
    """Return the stabilizer of a point as a group, with its inclusion.

    :raises PointNotInCarrier: if the point is not in the carrier.
    """
    members = stabilizer_elements(gset, point)
    group = subgroup_group(gset.group, members, name=f"Stab({gset.carrier[point]})")
    return group, GroupHomomorphism(group, gset.group, members)


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    """A map of G-sets over a common group, stored as its image tuple."""

    source: GSet
    target: GSet
    mapping: Mapping

    def validate(self) -> Verdict:
        """Check that the map commutes with every group element."""
        collector = DiagnosticCollector()
        if self.source.group != self.target.group:
            collector.fail("source and target have different groups")
            return collector.verdict()
        if len(self.mapping) != len(self.source) or any(
            not 0 <= y < len(self.target) for y in self.mapping
        ):
            collector.fail("mapping is not a function between the carriers")
            return collector.verdict()

        images = np.asarray(self.mapping, dtype=np.int64)
        mismatch = images[self.source.act] != self.target.act[:, images]
        for g, x in np.argwhere(mismatch)[:1]:
            collector.fail(
                f"not equivariant at ({self.source.group.elements[g]},{self.source.carrier[x]})",
                witness={
                    "element": self.source.group.elements[g],
                    "point": self.source.carrier[x],
                },
            )
        return collector.verdict(self)

    def __call__(self, x: int) -> int:
        """Return the image of a point."""
        return self.mapping[x]

    def then(self, other: "EquivariantMap") -> "EquivariantMap":
        """Return "self, then other"."""
        mapping = tuple(other.mapping[y] for y in self.mapping)
        return EquivariantMap(self.source, other.target, mapping)

    def is_bijective(self) -> bool:
        """Check if the map is a bijection."""
        if len(self.source) != len(self.target):
            return False
        return len(set(self.mapping)) == len(self.mapping)

    def fiber(self, y: int) -> Tuple[int, ...]:
        """Return the points mapping to y."""
        return tuple(x for x, image in enumerate(self.mapping) if image == y)


def _candidate_images(source: GSet, target: GSet) -> List[Tuple[int, List[int]]]:
    """Return each source orbit representative with the admissible images.

    y is admissible for r when Stab(r) fixes y.
    """
    candidates = []
    for block in orbits(source):
        representative = block[0]
        fixing = stabilizer_elements(source, representative)
        admissible = [
            y for y in range(len(target)) if all(target.act[g, y] == y for g in fixing)
        ]
        candidates.append((representative, admissible))
    return candidates


def _extend(
    source: GSet, target: GSet, representatives: Sequence[int], images: Sequence[int]
) -> Mapping:
    """Extend images of orbit representatives by f(g.r) = g.f(r)."""
    mapping = [-1] * len(source)
    for representative, image in zip(representatives, images):
        for g in range(len(source.group)):
            mapping[source.act[g, representative]] = int(target.act[g, image])
    return tuple(mapping)


def equivariant_maps(source: GSet, target: GSet, bijective: bool = False) -> List[Mapping]:
    """Return every equivariant map source -> target as image tuples, sorted.

    :raises GroupMismatch: if the G-sets have different groups.
    """
    if source.group != target.group:
        raise GroupMismatch("equivariant maps need a common group")

    candidates = _candidate_images(source, target)
    representatives = [r for r, _ in candidates]
    maps = []
    for images in product(*(admissible for _, admissible in candidates)):
        mapping = _extend(source, target, representatives, images)
        if bijective and len(set(mapping)) != len(target):
            continue
        maps.append(mapping)
    if bijective and len(source) != len(target):
        maps = []

    logger.bind(
        source=source.name, target=target.name, maps=len(maps), bijective=bijective
    ).debug("equivariant_maps_enumerated")
    return sorted(maps)


def find_equivariant_isomorphism(source: GSet, target: GSet) -> Optional[Mapping]:
    """Return an equivariant bijection source -> target, or None."""
    if source.group != target.group or len(source) != len(target):
        return None
    candidates = _candidate_images(source, target)
    representatives = [r for r, _ in candidates]
    for images in product(*(admissible for _, admissible in candidates)):
        mapping = _extend(source, target, representatives, images)
        if len(set(mapping)) == len(target):
            return mapping
    return None


def count_automorphisms(gset: GSet) -> int:
    """Count the equivariant bijections of a G-set without listing them.

    Each orbit is sent bijectively onto an orbit of the same size; the count sums, over the
    matchings of orbits, the product of the admissible images of each representative.
    """
    blocks = orbits(gset)
    stabilizers = [frozenset(stabilizer_elements(gset, b[0])) for b in blocks]
    point_stabilizers = {
        y: frozenset(stabilizer_elements(gset, y)) for block in blocks for y in block
    }
    weights = [
        [
            sum(1 for y in target if point_stabilizers[y] == stabilizers[i])
            if len(target) == len(source)
            else 0
            for target in blocks
        ]
        for i, source in enumerate(blocks)
    ]

    @lru_cache(maxsize=None)
    def matchings(position: int, used: int) -> int:
        if position == len(blocks):
            return 1
        total = 0
        for j, weight in enumerate(weights[position]):
            if weight and not used & (1 << j):
                total += weight * matchings(position + 1, used | (1 << j))
        return total

    count = matchings(0, 0)
    logger.bind(gset=gset.name, orbits=len(blocks), automorphisms=count).debug(
        "automorphisms_counted"
    )
    return count


def count_endomorphisms(gset: GSet) -> int:
    """Count all equivariant maps of a G-set to itself."""
    count = 1
    for _, admissible in _candidate_images(gset, gset):
        count *= len(admissible)
    return count


def aut_group(gset: GSet) -> Tuple[FiniteGroup, List[Mapping]]:
    """Return the automorphism group and its elements as image tuples.

    Elements are sorted, so the identity comes first. Multiplication is diagrammatic:
    the product of phi and psi is "phi, then psi".
    """
    automorphisms = equivariant_maps(gset, gset, bijective=True)
    position = {phi: index for index, phi in enumerate(automorphisms)}
    table = [[position[compose(phi, psi)] for psi in automorphisms] for phi in automorphisms]
    group = FiniteGroup(
        [perm_to_cycles(phi) for phi in automorphisms],
        table,
        name=f"Aut({gset.name})",
        check=False,
    )
    return group, automorphisms


def is_galois(gset: GSet) -> Verdict:
    """Check if a G-set is Galois.

    The G-set must be connected and (y, phi) -> (y, phi(y)) must be a bijection from
    carrier x Aut onto carrier x carrier; the map is enumerated literally.
    """
    if not is_connected(gset):
        witness = {"orbits": len(orbits(gset))}
        return Verdict(ok=False, diagnostics=("not connected",), witness=witness)

    _, automorphisms = aut_group(gset)
    image = {(y, phi[y]) for y in range(len(gset)) for phi in automorphisms}
    domain = len(gset) * len(automorphisms)
    codomain = len(gset) ** 2
    witness = {"domain": domain, "image": len(image), "codomain": codomain}
    if len(image) != domain:
        diagnostic = "(y, phi) -> (y, phi(y)) is not injective"
        return Verdict(ok=False, diagnostics=(diagnostic,), witness=witness)
    if len(image) != codomain:
        diagnostic = "(y, phi) -> (y, phi(y)) is not onto"
        return Verdict(ok=False, diagnostics=(diagnostic,), witness=witness)
    return Verdict(ok=True, witness=witness)


def normality_crosscheck(gset: GSet, point: int = 0) -> Dict[str, bool]:
    """Compare the Galois verdict with normality of a stabilizer and the automorphism count."""
    members = stabilizer_elements(gset, point)
    return {
        "galois": is_galois(gset).ok,
        "normal": gset.group.is_normal(members),
        "aut_order_is_size": count_automorphisms(gset) == len(gset),
    }


def require_connected(gset: GSet, what: str = "") -> None:
    """Refuse a disconnected G-set.

    :raises NotConnected: naming the G-set.
    """
    if not is_connected(gset):
        logger.bind(gset=gset.name, orbits=len(orbits(gset))).warning("not_connected")
        raise NotConnected(f"{what or gset.name} not connected")
