"""Evidence that two presentations define the same group.

Isomorphism of finitely presented groups is undecidable. Two presentations are reported as
agreeing when their abelianizations agree and their action counts agree up to a degree.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.fpgroup.abelian import Abelianization, abelianization
from lcgalois.fpgroup.actions import QuotientSpectrum, quotient_spectrum
from lcgalois.fpgroup.words import Presentation

logger = structlog.getLogger("lcgalois.fpgroup")

CAVEAT = "agreement of abelianization and action counts up to degree {degree}; not a proof"


@dataclass(frozen=True)
class GroupInvariants:
    """The comparison invariants of one presentation."""

    abelianization: Abelianization
    spectrum: QuotientSpectrum

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form."""
        return {
            "abelianization": self.abelianization.as_dict(),
            "spectrum": self.spectrum.as_dict(),
        }


def group_invariants(
    presentation: Presentation, degree: int, budget: Optional[GaloisBudgetConfig] = None
) -> GroupInvariants:
    """Compute the abelianization and the quotient spectrum up to a degree."""
    return GroupInvariants(
        abelianization(presentation), quotient_spectrum(presentation, degree, budget)
    )


@dataclass(frozen=True)
class Comparison:
    """The outcome of comparing two presentations."""

    left: GroupInvariants
    right: GroupInvariants
    degree: int

    @property
    def agree(self) -> bool:
        """Check if every invariant agrees."""
        return (
            self.left.abelianization == self.right.abelianization
            and self.left.spectrum.matches(self.right.spectrum)
        )

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form, stating what agreement means."""
        return {
            "agree": self.agree,
            "degree": self.degree,
            "left": self.left.as_dict(),
            "right": self.right.as_dict(),
            "evidence": CAVEAT.format(degree=self.degree),
        }


def compare_presentations(
    left: Presentation,
    right: Presentation,
    degree: Optional[int] = None,
    budget: Optional[GaloisBudgetConfig] = None,
) -> Comparison:
    """Compare two presentations by their invariants up to a degree.

    The degree defaults to the SPECTRUM_DEGREE budget.
    """
    budget = resolve_budget(budget)
    if degree is None:
        degree = budget.limit("SPECTRUM_DEGREE")
    comparison = Comparison(
        group_invariants(left, degree, budget), group_invariants(right, degree, budget), degree
    )
    logger.bind(left=left.name, right=right.name, degree=degree, agree=comparison.agree).debug(
        "presentations_compared"
    )
    return comparison
