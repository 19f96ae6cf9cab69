"""Abelianization of finitely presented groups."""

from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Tuple

import structlog
from sympy import ZZ, factorint
from sympy.polys.matrices.domainmatrix import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from lcgalois.fpgroup.words import Presentation

logger = structlog.getLogger("lcgalois.fpgroup")


@dataclass(frozen=True)
class Abelianization:
    """Z^rank x Z/t_1 x ... x Z/t_k with t_1 | t_2 | ... | t_k and every t_i > 1."""

    free_rank: int
    torsion: Tuple[int, ...]

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form."""
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        """Render as a product of cyclic groups."""
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " x ".join(parts) or "1"


def canonical_torsion(factors: Iterable[int]) -> Tuple[int, ...]:
    """Rewrite a product of cyclic groups as invariant factors t_1 | t_2 | ... | t_k.

    Factors 0 and 1 are ignored; signs are dropped.
    """
    exponents: Dict[int, List[int]] = defaultdict(list)
    for factor in factors:
        factor = abs(int(factor))
        if factor <= 1:
            continue
        for prime, exponent in factorint(factor).items():
            exponents[prime].append(exponent)

    length = max((len(e) for e in exponents.values()), default=0)
    invariants = [1] * length
    for prime, powers in exponents.items():
        for k, exponent in enumerate(sorted(powers, reverse=True)):
            invariants[length - 1 - k] *= prime**exponent
    return tuple(invariants)


def relation_matrix(presentation: Presentation) -> List[List[int]]:
    """Return the exponent sums, one row per relator and one column per generator."""
    return [
        [relator.exponent_sum(generator) for generator in presentation.generators]
        for relator in presentation.relators
    ]


def abelianization(presentation: Presentation) -> Abelianization:
    """Compute the abelianization from the Smith normal form of the relation matrix."""
    rows = relation_matrix(presentation)
    rank = presentation.rank
    if not rows or not rank:
        result = Abelianization(rank, ())
    else:
        matrix = DomainMatrix([[ZZ(v) for v in row] for row in rows], (len(rows), rank), ZZ)
        factors = [int(f) for f in invariant_factors(matrix)]
        nonzero = [f for f in factors if f != 0]
        result = Abelianization(rank - len(nonzero), canonical_torsion(nonzero))
    logger.bind(presentation=presentation.name, abelianization=str(result)).debug(
        "abelianization"
    )
    return result
