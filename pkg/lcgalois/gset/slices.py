"""The slice equivalence: G-sets over a connected Y against H-sets, H the stabilizer of a point.

A G-set Z over Y is sent to its fiber over the base point a; an H-set U is sent back to
Y x U with g.(y, u) = (g.y, gamma_{g.y}^-1 g gamma_y . u), where gamma_y carries a to y.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
import structlog

from lcgalois.core.groups import GroupHomomorphism
from lcgalois.exceptions import GroupMismatch, InvalidParam
from lcgalois.gset.gsets import (
    EquivariantMap,
    GSet,
    equivariant_maps,
    require_connected,
    stabilizer,
)
from lcgalois.typing import DiagnosticCollector, Mapping, Verdict

logger = structlog.getLogger("lcgalois.gset")


@dataclass(frozen=True, eq=False)
class Transversal:
    """A choice of gamma_y with gamma_y . base = y for every point y of a connected G-set."""

    gset: GSet
    base: int
    elements: Tuple[int, ...]

    def __getitem__(self, point: int) -> int:
        """Return gamma for a point."""
        return self.elements[point]

    @classmethod
    def canonical(cls, gset: GSet, base: int) -> "Transversal":
        """Pick gamma_y as the least group element carrying base to y.

        The identity sits at index 0, so gamma_base is the identity.

        :raises NotConnected: if the G-set is not connected.
        """
        gset.check_point(base)
        require_connected(gset)
        column = gset.act[:, base]
        elements = tuple(int(np.argmax(column == y)) for y in range(len(gset)))
        return cls(gset, base, elements)

    def validate(self) -> Verdict:
        """Check gamma_y . base = y for every y and gamma_base = identity."""
        collector = DiagnosticCollector()
        for y, gamma in enumerate(self.elements):
            if self.gset.apply(gamma, self.base) != y:
                collector.fail(
                    f"gamma does not reach {self.gset.carrier[y]}",
                    witness={"point": self.gset.carrier[y]},
                )
        if self.elements[self.base] != 0:
            collector.fail("gamma of the base point is not the identity")
        return collector.verdict(self)


@dataclass(frozen=True, eq=False)
class SliceFiber:
    """The fiber of a G-set over Y at a point, as an H-set.

    :ivar hset: The fiber with the restricted action of the stabilizer H.
    :ivar points: The fiber points, as indices into the total G-set.
    :ivar inclusion: The inclusion H -> G.
    """

    hset: GSet
    points: Tuple[int, ...]
    inclusion: GroupHomomorphism


def _require_over(projection: EquivariantMap) -> None:
    """Refuse a map that is not equivariant."""
    verdict = projection.validate()
    if not verdict:
        raise InvalidParam("; ".join(verdict.diagnostics))


def slice_to_hset(projection: EquivariantMap, base: int) -> SliceFiber:
    """Return the fiber of Z -> Y over a point of Y as a set acted on by its stabilizer.

    :raises NotConnected: if Y is not connected.
    :raises PointNotInCarrier: if the point is not in Y.
    """
    total, over = projection.source, projection.target
    over.check_point(base)
    require_connected(over, "Y")
    _require_over(projection)

    group, inclusion = stabilizer(over, base)
    points = projection.fiber(base)
    position = {z: index for index, z in enumerate(points)}
    act = [[position[total.apply(g, z)] for z in points] for g in inclusion.images]
    carrier = [total.carrier[z] for z in points]
    hset = GSet(group, carrier, act, name=f"{total.name}|a", check=False)
    logger.bind(total=total.name, base=over.carrier[base], fiber=len(points)).debug("slice_fiber")
    return SliceFiber(hset, points, inclusion)


def hset_to_slice(hset: GSet, over: GSet, transversal: Transversal) -> EquivariantMap:
    """Return Y x U -> Y for an H-set U, with the twisted G-action on Y x U.

    The pair (y, u) has index y * |U| + u.

    :raises InvalidParam: if the transversal belongs to another G-set.
    :raises GroupMismatch: if U is not acted on by the stabilizer of the transversal's base.
    """
    if transversal.gset is not over:
        raise InvalidParam(f"transversal of {transversal.gset.name}, not of {over.name}")
    group, inclusion = stabilizer(over, transversal.base)
    if hset.group != group:
        raise GroupMismatch("H mismatch")

    ambient = over.group
    in_h = {g: index for index, g in enumerate(inclusion.images)}
    size = len(hset)
    act = np.zeros((len(ambient), len(over) * size), dtype=np.int64)
    for g in range(len(ambient)):
        for y in range(len(over)):
            gy = over.apply(g, y)
            twist = ambient.product([ambient.inv(transversal[gy]), g, transversal[y]])
            act[g, y * size : (y + 1) * size] = gy * size + hset.act[in_h[twist]]

    carrier = [f"({y},{u})" for y in over.carrier for u in hset.carrier]
    total = GSet(ambient, carrier, act, name=f"{over.name}x{hset.name}", check=False)
    mapping = tuple(y for y in range(len(over)) for _ in range(size))
    return EquivariantMap(total, over, mapping)


@dataclass(frozen=True, eq=False)
class HomTransport:
    """Both sides of Hom_{Y,G}(Z, Z') = Hom_H(fiber, fiber') and the restriction map."""

    slice_maps: List[Mapping]
    fiber_maps: List[Mapping]
    restriction: List[Mapping]
    verdict: Verdict

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        return {
            "slice_maps": [list(m) for m in self.slice_maps],
            "fiber_maps": [list(m) for m in self.fiber_maps],
            "restriction": [list(m) for m in self.restriction],
            "bijective": self.verdict.ok,
            "diagnostics": list(self.verdict.diagnostics),
        }


def hom_transport(projection: EquivariantMap, other: EquivariantMap, base: int) -> HomTransport:
    """Enumerate maps over Y and maps of fibers, and verify restriction is a bijection.

    The inverse is realized by the extension f(z) = g.f_a(g^-1.z) with g.a = p(z).

    :raises InvalidParam: if the two maps do not share their base.
    """
    over = projection.target
    if other.target is not over and (
        other.target.carrier != over.carrier or not np.array_equal(other.target.act, over.act)
    ):
        raise InvalidParam("both maps must lie over the same G-set")

    fiber, other_fiber = slice_to_hset(projection, base), slice_to_hset(other, base)
    total, other_total = projection.source, other.source
    slice_maps = [
        f
        for f in equivariant_maps(total, other_total)
        if all(other.mapping[f[z]] == projection.mapping[z] for z in range(len(total)))
    ]
    fiber_maps = equivariant_maps(fiber.hset, other_fiber.hset)

    other_position = {z: index for index, z in enumerate(other_fiber.points)}
    position = {z: index for index, z in enumerate(fiber.points)}
    transversal = Transversal.canonical(over, base)
    group = over.group

    def restrict(f: Mapping) -> Mapping:
        return tuple(other_position[f[z]] for z in fiber.points)

    def extend(phi: Mapping) -> Mapping:
        images = []
        for z in range(len(total)):
            gamma = transversal[projection.mapping[z]]
            at_base = total.apply(group.inv(gamma), z)
            images.append(other_total.apply(gamma, other_fiber.points[phi[position[at_base]]]))
        return tuple(images)

    collector = DiagnosticCollector()
    restricted = [restrict(f) for f in slice_maps]
    if sorted(restricted) != fiber_maps:
        collector.fail(
            "restriction is not a bijection",
            witness={"slice_maps": len(slice_maps), "fiber_maps": len(fiber_maps)},
        )
    for f in slice_maps:
        if extend(restrict(f)) != f:
            collector.fail("a map over Y is not determined by its fiber", witness=list(f))
            break
    for phi in fiber_maps:
        if restrict(extend(phi)) != phi:
            collector.fail("extension does not restrict back", witness=list(phi))
            break

    logger.bind(slice_maps=len(slice_maps), fiber_maps=len(fiber_maps)).debug("hom_transport")
    return HomTransport(slice_maps, fiber_maps, restricted, collector.verdict())
