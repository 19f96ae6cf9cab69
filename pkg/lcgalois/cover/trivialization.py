"""Trivialization quotients of pi1 and the inverse system of its finite quotients."""

from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.core.chains import ProGroupoidChain, validate_chain
from lcgalois.core.groups import FiniteGroup, GroupHomomorphism, Subgroup
from lcgalois.cover.covers import CoveringMap, monodromy, require_cover
from lcgalois.cover.graphs import Graph
from lcgalois.cover.pi1 import SpanningTreeData, pi1_graph
from lcgalois.exceptions import InvalidParam, InvariantViolation, NotConnected
from lcgalois.fpgroup.actions import (
    FiniteAction,
    check_action_budget,
    transitive_action_classes,
)
from lcgalois.fpgroup.words import Presentation
from lcgalois.tools import compose, identity_perm, perm_to_cycles
from lcgalois.typing import Perm

logger = structlog.getLogger("lcgalois.cover")


@dataclass(frozen=True, eq=False)
class JointImage:
    """The permutation group generated by several actions side by side.

    The fibers of the actions are laid out consecutively; a * b is "a then b".

    :ivar perms: The permutation of every group element.
    :ivar generators: The group element of every generator.
    """

    group: FiniteGroup
    perms: Tuple[Perm, ...]
    generators: Tuple[int, ...]


def _closure(
    generators: Sequence[Perm], degree: int, budget: GaloisBudgetConfig
) -> List[Perm]:
    """Generate a permutation group, refusing when it grows past the IMAGE_ORDER budget."""
    identity = identity_perm(degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for generator in generators:
            product = compose(current, generator)
            if product not in seen:
                seen.add(product)
                if not budget.allows("IMAGE_ORDER", len(seen)):
                    logger.bind(degree=degree, reached=len(seen)).warning("image_order_refused")
                    budget.enforce("IMAGE_ORDER", len(seen), "joint monodromy image")
                queue.append(product)
    return sorted(seen)


def joint_image(
    actions: Sequence[FiniteAction],
    name: str = "M",
    budget: Optional[GaloisBudgetConfig] = None,
) -> JointImage:
    """Return the image of pi1 in the product of the symmetric groups of several actions.

    Its kernel is the intersection of the kernels of the actions.

    :raises InvalidParam: if the actions disagree on their generators.
    :raises BudgetExceeded: if the image is larger than the IMAGE_ORDER budget.
    """
    if not actions:
        raise InvalidParam("a joint image needs at least one action")
    generators = actions[0].generators
    if any(a.generators != generators for a in actions):
        raise InvalidParam("actions of different presentations")

    budget = resolve_budget(budget)
    degree = sum(a.degree for a in actions)
    joint = []
    for k in range(len(generators)):
        perm: List[int] = []
        offset = 0
        for action in actions:
            perm.extend(offset + p for p in action.images[k])
            offset += action.degree
        joint.append(tuple(perm))

    perms = _closure(joint, degree, budget)
    group = FiniteGroup.from_function(
        perms, compose, name=name, namer=perm_to_cycles, check=False
    )
    lookup = {p: k for k, p in enumerate(perms)}
    return JointImage(group, tuple(perms), tuple(lookup[p] for p in joint))


def factors_through(action: FiniteAction, other: FiniteAction) -> bool:
    """Check if the kernel of other lies in the kernel of action."""
    return len(joint_image([other, action]).group) == len(joint_image([other]).group)


def monodromy_stabilizer(image: JointImage, point: int = 0) -> Subgroup:
    """Return the elements of the image fixing a point, sorted."""
    return tuple(k for k, p in enumerate(image.perms) if p[point] == point)


@dataclass(frozen=True, eq=False)
class TrivializationQuotient:
    """G_R for a connected cover U: the quotient of pi1 classifying the covers U trivializes.

    :ivar action: The monodromy of U.
    :ivar monodromy: The monodromy image M = pi1 / core(H), H the stabilizer of a point.
    :ivar stabilizer: H inside M.
    :ivar kernel: The normal closure of H inside M.
    :ivar group: G_R = M / kernel.
    :ivar projection: The element of G_R of every generator of pi1.
    :ivar quotient_map: M -> G_R.
    """

    presentation: Presentation
    tree: SpanningTreeData
    action: FiniteAction
    monodromy: JointImage
    stabilizer: Subgroup
    kernel: Subgroup
    group: FiniteGroup
    projection: Tuple[int, ...]
    quotient_map: GroupHomomorphism

    @property
    def monodromy_group(self) -> FiniteGroup:
        """Return the monodromy image."""
        return self.monodromy.group

    def regular_action(self) -> FiniteAction:
        """Return pi1 acting on G_R by right multiplication through the projection.

        Its kernel is the kernel of pi1 -> G_R, so a cover is trivialized by U exactly when
        its monodromy factors through this action.
        """
        group = self.group
        images = tuple(
            tuple(group.mul(x, image) for x in range(len(group))) for image in self.projection
        )
        return FiniteAction(self.presentation.generators, len(group), images)

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        generators = self.presentation.generators
        return {
            "order": len(self.group),
            "elements": list(self.group.elements),
            "projection": {
                g: self.group.elements[image] for g, image in zip(generators, self.projection)
            },
            "monodromy_order": len(self.monodromy_group),
            "monodromy": self.action.as_dict(),
            "stabilizer_order": len(self.stabilizer),
            "galois": self.monodromy_group.is_normal(self.stabilizer),
        }


def trivialization_quotient(
    cover: CoveringMap, base: int = 0, budget: Optional[GaloisBudgetConfig] = None
) -> TrivializationQuotient:
    """Compute G_R for a connected cover of a graph, with the projection from pi1.

    :raises NotConnected: if the total graph of the cover is not connected.
    :raises InvalidCover: if the map is not a covering map.
    """
    require_cover(cover)
    if not cover.total.is_connected():
        logger.bind(total=cover.total.name).warning("not_connected")
        raise NotConnected(f"{cover.total.name} not connected")

    presentation, tree = pi1_graph(cover.base, base)
    action = monodromy(cover, base, tree)
    image = joint_image([action], name=f"Mon({cover.total.name})", budget=budget)
    group = image.group
    stabilizer = monodromy_stabilizer(image)
    kernel = group.normal_closure(stabilizer)
    quotient, images = group.quotient(kernel, name=f"G({cover.total.name})")
    quotient_map = GroupHomomorphism(group, quotient, tuple(images))
    projection = tuple(quotient_map(g) for g in image.generators)

    logger.bind(
        total=cover.total.name,
        monodromy_order=len(group),
        stabilizer=len(stabilizer),
        order=len(quotient),
    ).debug("trivialization_quotient")
    return TrivializationQuotient(
        presentation,
        tree,
        action,
        image,
        stabilizer,
        kernel,
        quotient,
        projection,
        quotient_map,
    )


@dataclass(frozen=True, eq=False)
class InverseSystem:
    """The chain pi1 / N_1 <- pi1 / N_2 <- ... of finite quotients of pi1.

    N_k is the intersection of the kernels of the transitive actions of degree at most k.

    :ivar factors: Representatives of the transitive actions, by degree; level k uses the
        prefix of degree at most k.
    :ivar images: Per level, the element of every generator of pi1.
    """

    presentation: Presentation
    tree: SpanningTreeData
    chain: ProGroupoidChain
    factors: Tuple[FiniteAction, ...]
    images: Tuple[Tuple[int, ...], ...]

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        generators = self.presentation.generators
        levels = []
        for k, groupoid in enumerate(self.chain.levels):
            group, _ = groupoid.vertex_group(0)
            levels.append(
                {
                    "level": k + 1,
                    "order": len(group),
                    "abelian": group.is_abelian(),
                    "generators": {
                        g: group.elements[e] for g, e in zip(generators, self.images[k])
                    },
                }
            )
        return {"rank": self.presentation.rank, "levels": levels}


def pi1_inverse_system(
    graph: Graph, base: int, depth: int, budget: Optional[GaloisBudgetConfig] = None
) -> InverseSystem:
    """Build the chain of finite quotients of pi1(graph, base) seen by covers of degree <= k.

    Level k is the joint image of one representative of every transitive action of degree at
    most k; conjugate actions have the same kernel. Level k + 1 maps to level k by forgetting
    the fibers of the actions of degree k + 1.

    :raises InvalidParam: if the depth is not positive.
    :raises BudgetExceeded: if the enumeration or some level is over its budget.
    :raises InvariantViolation: if the levels do not form a valid chain.
    """
    if depth < 1:
        raise InvalidParam("the inverse system needs depth at least 1")
    budget = resolve_budget(budget)
    presentation, tree = pi1_graph(graph, base)
    check_action_budget(presentation, depth, budget)

    factors: List[FiniteAction] = []
    images: List[JointImage] = []
    widths: List[int] = []
    for degree in range(1, depth + 1):
        factors.extend(transitive_action_classes(presentation, degree, budget))
        images.append(joint_image(factors, name=f"pi1/N{degree}", budget=budget))
        widths.append(sum(a.degree for a in factors))

    projections = []
    for k in range(depth - 1):
        lower = {p: index for index, p in enumerate(images[k].perms)}
        projections.append([lower[p[: widths[k]]] for p in images[k + 1].perms])
    chain = ProGroupoidChain.from_groups([i.group for i in images], projections)
    verdict = validate_chain(chain)
    if not verdict.ok:
        raise InvariantViolation(verdict.diagnostics)

    system = InverseSystem(
        presentation,
        tree,
        chain,
        tuple(factors),
        tuple(i.generators for i in images),
    )
    logger.bind(
        graph=graph.name,
        depth=depth,
        orders=[len(i.group) for i in images],
    ).debug("pi1_inverse_system")
    return system
