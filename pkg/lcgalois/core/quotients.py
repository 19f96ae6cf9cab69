"""Finite quotients of a finite group."""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.core.groups import FiniteGroup, GroupHomomorphism, Subgroup

logger = structlog.getLogger("lcgalois.core")


@dataclass(frozen=True, eq=False)
class FiniteQuotient:
    """A normal subgroup N, the quotient G/N and the projection G -> G/N."""

    kernel: Subgroup
    group: FiniteGroup
    projection: GroupHomomorphism

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable summary."""
        source = self.projection.source
        return {
            "kernel": [source.elements[k] for k in self.kernel],
            "order": len(self.group),
            "projection": list(self.projection.images),
        }


def normal_subgroups(
    group: FiniteGroup, budget: Optional[GaloisBudgetConfig] = None
) -> List[Subgroup]:
    """Return every normal subgroup, by size and then by elements.

    :raises BudgetExceeded: if the group is larger than the GROUP_ORDER budget.
    """
    budget = resolve_budget(budget)
    if not budget.allows("GROUP_ORDER", len(group)):
        logger.bind(group=group.name, order=len(group)).warning("group_order_refused")
    budget.enforce("GROUP_ORDER", len(group), "normal subgroup enumeration")
    return [subgroup for subgroup in group.subgroups() if group.is_normal(subgroup)]


def finite_quotients(
    group: FiniteGroup, budget: Optional[GaloisBudgetConfig] = None
) -> List[FiniteQuotient]:
    """Return every quotient G/N with its kernel and projection.

    Ordered by kernel size and then by the kernel's elements, so G itself comes first and the
    trivial quotient last.
    """
    quotients = []
    for kernel in normal_subgroups(group, budget):
        quotient, images = group.quotient(kernel, name=f"{group.name}/{len(kernel)}")
        quotients.append(
            FiniteQuotient(kernel, quotient, GroupHomomorphism(group, quotient, images))
        )
    logger.bind(group=group.name, quotients=len(quotients)).debug("finite_quotients")
    return quotients
