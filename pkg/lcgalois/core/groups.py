"""Finite groups stored as Cayley tables.

Elements are referred to by index into ``FiniteGroup.elements``; the identity always sits at
index 0 and ``table[a, b]`` is the index of the product ``a * b``.
"""

from collections import deque
from dataclasses import dataclass
from itertools import permutations as all_permutations
from itertools import product
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
import structlog

from lcgalois.exceptions import InvalidParam, InvariantViolation
from lcgalois.tools import compose, generated_perms, perm_to_cycles
from lcgalois.typing import DiagnosticCollector, Perm, Verdict

logger = structlog.getLogger("lcgalois.core")

Subgroup = Tuple[int, ...]

# Quaternion units 1, i, j, k and their products as (sign, unit).
_QUATERNION_UNITS = ("1", "i", "j", "k")
_QUATERNION_PRODUCTS = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def validate_group(elements: Sequence[str], table: Sequence[Sequence[int]]) -> Verdict:
    """Check the group axioms on a raw multiplication table.

    The identity must be the element at index 0. Diagnostics name the violated axiom and the
    witnessing elements.
    """
    collector = DiagnosticCollector()
    n = len(elements)
    if n == 0:
        collector.fail("a group needs at least one element")
        return collector.verdict()
    if len(set(elements)) != n:
        collector.fail("element names are not unique")

    cayley = np.asarray(table, dtype=np.int64)
    if cayley.shape != (n, n):
        collector.fail(f"table has shape {cayley.shape}, expected {(n, n)}")
        return collector.verdict()
    if cayley.size and (cayley.min() < 0 or cayley.max() >= n):
        collector.fail("table entries outside the element range")
        return collector.verdict()

    indices = np.arange(n)
    for a in np.flatnonzero((cayley[0] != indices) | (cayley[:, 0] != indices)):
        collector.fail(
            f"identity not neutral at {elements[a]}", witness={"element": elements[a]}
        )

    for a in range(n):
        if not ((cayley[a] == 0).any() and (cayley[:, a] == 0).any()):
            collector.fail(f"missing inverse for {elements[a]}", witness={"element": elements[a]})

    left = cayley[cayley]
    right = cayley[indices[:, None, None], cayley[None, :, :]]
    for a, b, c in np.argwhere(left != right)[:3]:
        triple = (elements[a], elements[b], elements[c])
        collector.fail(f"non-associative at {triple}", witness={"triple": list(triple)})

    return collector.verdict()


class FiniteGroup:
    """A finite group given by its elements and Cayley table."""

    def __init__(
        self,
        elements: Sequence[str],
        table: Sequence[Sequence[int]],
        name: str = "G",
        permutations: Optional[Sequence[Perm]] = None,
        check: bool = True,
    ) -> None:
        """Create a group.

        :param elements: Element names; the identity first.
        :param table: table[a][b] is the index of a * b.
        :param name: A display name.
        :param permutations: For permutation groups, the permutation of each element.
        :param check: Validate the group axioms.
        :raises InvariantViolation: if the table is not a group table.
        """
        if check:
            verdict = validate_group(elements, table)
            if not verdict:
                raise InvariantViolation(verdict.diagnostics)

        self.name = name
        self.elements: Tuple[str, ...] = tuple(elements)
        self.table = np.array(table, dtype=np.int64).reshape(len(elements), len(elements))
        self.table.setflags(write=False)
        self.inverse = np.argmax(self.table == 0, axis=1)
        self.inverse.setflags(write=False)
        self.permutations: Optional[Tuple[Perm, ...]] = (
            tuple(tuple(p) for p in permutations) if permutations is not None else None
        )
        self._lookup = {element: index for index, element in enumerate(self.elements)}

    def __len__(self) -> int:
        """Return the order of the group."""
        return len(self.elements)

    def __repr__(self) -> str:
        """Return a short representation."""
        return f"FiniteGroup({self.name!r}, order={len(self)})"

    def __eq__(self, other: object) -> bool:
        """Compare elements and tables."""
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        """Hash elements and table."""
        return hash((self.elements, self.table.tobytes()))

    @property
    def order(self) -> int:
        """Return the order of the group."""
        return len(self.elements)

    @property
    def identity(self) -> int:
        """Return the index of the identity."""
        return 0

    def index(self, name: str) -> int:
        """Return the index of a named element.

        :raises InvalidParam: if the group has no such element.
        """
        try:
            return self._lookup[name]
        except KeyError as exc:
            raise InvalidParam(f"{name!r} is not an element of {self.name}") from exc

    def mul(self, a: int, b: int) -> int:
        """Return a * b."""
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        """Return the inverse of a."""
        return int(self.inverse[a])

    def product(self, factors: Iterable[int]) -> int:
        """Multiply a sequence of elements left to right."""
        result = 0
        for factor in factors:
            result = int(self.table[result, factor])
        return result

    def power(self, a: int, k: int) -> int:
        """Return a ** k, for any integer k."""
        base = a if k >= 0 else self.inv(a)
        result = 0
        for _ in range(abs(k)):
            result = int(self.table[result, base])
        return result

    def conjugate(self, g: int, h: int) -> int:
        """Return g h g^-1."""
        return int(self.table[self.table[g, h], self.inverse[g]])

    def element_order(self, a: int) -> int:
        """Return the order of an element."""
        order, current = 1, a
        while current != 0:
            current = int(self.table[current, a])
            order += 1
        return order

    def is_abelian(self) -> bool:
        """Check if the group is abelian."""
        return bool(np.array_equal(self.table, self.table.T))

    def is_trivial(self) -> bool:
        """Check if the group has one element."""
        return len(self) == 1

    # Subgroups

    def generated_subgroup(self, generators: Iterable[int]) -> FrozenSet[int]:
        """Return the subgroup generated by some elements."""
        generators = list(generators)
        found = {0}
        frontier = [0]
        while frontier:
            current = frontier.pop()
            for generator in generators:
                element = int(self.table[current, generator])
                if element not in found:
                    found.add(element)
                    frontier.append(element)
        return frozenset(found)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        """Check if a subset is a subgroup."""
        members = sorted(set(subset))
        if not members or members[0] != 0:
            return False
        closed = self.table[np.ix_(members, self.inverse[members])]
        return bool(np.isin(closed, members).all())

    def subgroups(self) -> List[Subgroup]:
        """Return every subgroup, ordered by size and then by elements.

        Subgroups are found by joining cyclic subgroups until the lattice closes.
        """
        cyclic = {self.generated_subgroup([a]) for a in range(len(self))}
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            grown = []
            for subgroup in frontier:
                for cycle in cyclic:
                    if cycle <= subgroup:
                        continue
                    joined = self.generated_subgroup(subgroup | cycle)
                    if joined not in found:
                        found.add(joined)
                        grown.append(joined)
            frontier = grown

        result = sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))
        logger.bind(group=self.name, order=len(self), subgroups=len(result)).debug(
            "subgroups_enumerated"
        )
        return result

    def is_normal(self, subgroup: Iterable[int]) -> bool:
        """Check if a subgroup is normal: g H g^-1 = H for every g."""
        members = np.array(sorted(set(subgroup)), dtype=np.int64)
        conjugates = self.table[self.table[:, members], self.inverse[:, None]]
        return bool(np.isin(conjugates, members).all())

    def normal_closure(self, subset: Iterable[int]) -> Subgroup:
        """Return the smallest normal subgroup containing a subset."""
        subset = sorted(set(subset))
        conjugates = {self.conjugate(g, s) for g in range(len(self)) for s in subset}
        return tuple(sorted(self.generated_subgroup(conjugates)))

    def core(self, subgroup: Iterable[int]) -> Subgroup:
        """Return the normal core: the intersection of all conjugates of a subgroup."""
        members = set(subgroup)
        for g in range(len(self)):
            members &= {self.conjugate(g, h) for h in subgroup}
        return tuple(sorted(members))

    def left_cosets(self, subgroup: Iterable[int]) -> List[Subgroup]:
        """Return the left cosets gH, ordered by least element."""
        members = sorted(set(subgroup))
        cosets = {tuple(sorted(int(x) for x in self.table[g, members])) for g in range(len(self))}
        return sorted(cosets)

    def index_of(self, subgroup: Iterable[int]) -> int:
        """Return the index [G : H]."""
        return len(self) // len(set(subgroup))

    def quotient(
        self, normal: Iterable[int], name: str = ""
    ) -> Tuple["FiniteGroup", Tuple[int, ...]]:
        """Return G/N and the projection as an image tuple.

        Cosets are ordered by least element, so the coset N itself is the identity.

        :raises InvalidParam: if the subgroup is not normal.
        """
        members = sorted(set(normal))
        if not self.is_subgroup(members) or not self.is_normal(members):
            raise InvalidParam(f"{members} is not a normal subgroup of {self.name}")

        cosets = self.left_cosets(members)
        projection = [0] * len(self)
        for position, coset in enumerate(cosets):
            for element in coset:
                projection[element] = position

        representatives = [coset[0] for coset in cosets]
        table = [
            [projection[int(self.table[a, b])] for b in representatives] for a in representatives
        ]
        if len(members) == 1:
            names = [self.elements[r] for r in representatives]
        else:
            names = [f"[{self.elements[r]}]" for r in representatives]
        quotient = FiniteGroup(names, table, name=name or f"{self.name}/N", check=False)
        return quotient, tuple(projection)

    def generating_set(self) -> Tuple[int, ...]:
        """Return a generating set, chosen greedily by decreasing element order."""
        candidates = sorted(range(1, len(self)), key=lambda a: (-self.element_order(a), a))
        generators: List[int] = []
        span = frozenset({0})
        for candidate in candidates:
            if len(span) == len(self):
                break
            if candidate in span:
                continue
            generators.append(candidate)
            span = self.generated_subgroup(generators)
        return tuple(generators)

    def words(self, generators: Sequence[int]) -> Dict[int, Tuple[int, ...]]:
        """Return, for each element, a shortest word in the generators (as generator positions).

        Words are found breadth first, extending on the right.
        """
        words: Dict[int, Tuple[int, ...]] = {0: ()}
        queue = deque([0])
        while queue:
            current = queue.popleft()
            for position, generator in enumerate(generators):
                element = int(self.table[current, generator])
                if element not in words:
                    words[element] = words[current] + (position,)
                    queue.append(element)
        return words

    def presentation(self):
        """Return the Cayley-graph presentation of the group on its generating set."""
        from lcgalois.fpgroup.words import cayley_presentation  # noqa

        return cayley_presentation(self)

    def as_groupoid(self):
        """Return the group as a one-object groupoid."""
        from lcgalois.core.groupoids import FiniteGroupoid  # noqa

        return FiniteGroupoid.from_group(self)

    # Constructors

    @classmethod
    def from_function(
        cls,
        elements: Sequence[Hashable],
        multiply: Callable[[Hashable, Hashable], Hashable],
        name: str = "G",
        namer: Callable[[Hashable], str] = str,
        check: bool = True,
    ) -> "FiniteGroup":
        """Build a group from its elements (identity first) and a multiplication function."""
        lookup = {element: index for index, element in enumerate(elements)}
        table = [[lookup[multiply(a, b)] for b in elements] for a in elements]
        return cls([namer(e) for e in elements], table, name=name, check=check)

    @classmethod
    def from_permutations(
        cls, generators: Iterable[Sequence[int]], degree: int, name: str = "G"
    ) -> "FiniteGroup":
        """Build the permutation group generated by some permutations of {0, ..., degree-1}.

        Products are function composition, (a * b)(i) = a(b(i)), so the natural action on the
        points is a left action. Elements are named in 1-based cycle notation.
        """
        perms = generated_perms(generators, degree)
        lookup = {perm: index for index, perm in enumerate(perms)}
        table = [[lookup[compose(b, a)] for b in perms] for a in perms]
        return cls(
            [perm_to_cycles(p) for p in perms],
            table,
            name=name,
            permutations=perms,
            check=False,
        )

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        """Return the trivial group."""
        return cls(["e"], [[0]], name="1", check=False)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        """Return Z/n with elements named 0..n-1."""
        if n < 1:
            raise InvalidParam("cyclic groups need n >= 1")
        table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return cls([str(k) for k in range(n)], table, name=f"Z/{n}", check=False)

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Return the dihedral group of order 2n, elements r^k s^j."""
        if n < 1:
            raise InvalidParam("dihedral groups need n >= 1")
        elements = [(k, j) for j in (0, 1) for k in range(n)]

        def multiply(x, y):
            (k1, j1), (k2, j2) = x, y
            return ((k1 + (k2 if j1 == 0 else -k2)) % n, (j1 + j2) % 2)

        def namer(x):
            k, j = x
            rotation = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
            return (rotation + ("s" if j else "")) or "e"

        return cls.from_function(elements, multiply, name=f"D{n}", namer=namer, check=False)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        """Return the symmetric group on n points as a permutation group."""
        return cls.from_permutations(all_permutations(range(n)), n, name=f"S{n}")

    @classmethod
    def alternating(cls, n: int) -> "FiniteGroup":
        """Return the alternating group on n points."""
        even = [p for p in all_permutations(range(n)) if _parity(p) == 0]
        return cls.from_permutations(even, n, name=f"A{n}")

    @classmethod
    def quaternion(cls) -> "FiniteGroup":
        """Return the quaternion group of order 8."""
        elements = [(sign, unit) for unit in range(4) for sign in (1, -1)]

        def multiply(x, y):
            sign, unit = _QUATERNION_PRODUCTS[x[1]][y[1]]
            return (x[0] * y[0] * sign, unit)

        def namer(x):
            return ("" if x[0] > 0 else "-") + _QUATERNION_UNITS[x[1]]

        return cls.from_function(elements, multiply, name="Q8", namer=namer, check=False)

    @classmethod
    def direct_product(cls, left: "FiniteGroup", right: "FiniteGroup") -> "FiniteGroup":
        """Return the direct product; (a, b) has index a * |right| + b."""
        m = len(right)
        table = left.table[:, None, :, None] * m + right.table[None, :, None, :]
        table = table.reshape(len(left) * m, len(left) * m)
        names = [f"({a},{b})" for a in left.elements for b in right.elements]
        return cls(names, table, name=f"{left.name}x{right.name}", check=False)


def _parity(perm: Sequence[int]) -> int:
    """Return 0 for even permutations and 1 for odd ones."""
    seen = set()
    parity = 0
    for start in range(len(perm)):
        length = 0
        current = start
        while current not in seen:
            seen.add(current)
            current = perm[current]
            length += 1
        if length:
            parity ^= (length - 1) % 2
    return parity


@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    """A map of groups, stored as the image of every source element."""

    source: FiniteGroup
    target: FiniteGroup
    images: Tuple[int, ...]

    def __call__(self, a: int) -> int:
        """Return the image of an element."""
        return self.images[a]

    def __eq__(self, other: object) -> bool:
        """Compare groups and images."""
        if not isinstance(other, GroupHomomorphism):
            return NotImplemented
        return (self.source, self.target, self.images) == (
            other.source,
            other.target,
            other.images,
        )

    def __hash__(self) -> int:
        """Hash the images."""
        return hash(self.images)

    def validate(self) -> Verdict:
        """Check that the map is a homomorphism."""
        collector = DiagnosticCollector()
        if len(self.images) != len(self.source):
            collector.fail("image tuple does not cover the source group")
            return collector.verdict()
        images = np.array(self.images, dtype=np.int64)
        if images.min() < 0 or images.max() >= len(self.target):
            collector.fail("images outside the target group")
            return collector.verdict()

        mapped = images[self.source.table]
        expected = self.target.table[images[:, None], images[None, :]]
        for a, b in np.argwhere(mapped != expected)[:3]:
            pair = (self.source.elements[a], self.source.elements[b])
            collector.fail(f"product not preserved at {pair}", witness={"pair": list(pair)})
        return collector.verdict(self)

    def image(self) -> Subgroup:
        """Return the image subgroup."""
        return tuple(sorted(set(self.images)))

    def kernel(self) -> Subgroup:
        """Return the kernel."""
        return tuple(a for a, image in enumerate(self.images) if image == 0)

    def is_surjective(self) -> bool:
        """Check if every target element is hit."""
        return len(set(self.images)) == len(self.target)

    def is_injective(self) -> bool:
        """Check if no two elements share an image."""
        return len(set(self.images)) == len(self.images)

    def then(self, other: "GroupHomomorphism") -> "GroupHomomorphism":
        """Return the composite "self, then other"."""
        return GroupHomomorphism(
            self.source, other.target, tuple(other.images[i] for i in self.images)
        )

    def as_groupoid_morphism(self):
        """Return the homomorphism as a morphism of one-object groupoids."""
        from lcgalois.core.groupoids import GroupoidMorphism  # noqa

        return GroupoidMorphism(
            self.source.as_groupoid(), self.target.as_groupoid(), (0,), self.images
        )

    @classmethod
    def identity(cls, group: FiniteGroup) -> "GroupHomomorphism":
        """Return the identity of a group."""
        return cls(group, group, tuple(range(len(group))))

    @classmethod
    def inclusion(cls, group: FiniteGroup, subgroup: Iterable[int]) -> "GroupHomomorphism":
        """Return the inclusion of a subgroup, as a group of its own, into the group."""
        members = sorted(set(subgroup))
        return cls(subgroup_group(group, members), group, tuple(members))


def subgroup_group(group: FiniteGroup, subgroup: Iterable[int], name: str = "") -> FiniteGroup:
    """Return a subgroup as a group of its own, keeping element names and order."""
    members = sorted(set(subgroup))
    if not group.is_subgroup(members):
        raise InvalidParam(f"{members} is not a subgroup of {group.name}")
    position = {element: index for index, element in enumerate(members)}
    table = [[position[int(group.table[a, b])] for b in members] for a in members]
    permutations = None
    if group.permutations is not None:
        permutations = [group.permutations[m] for m in members]
    return FiniteGroup(
        [group.elements[m] for m in members],
        table,
        name=name or f"{group.name}|H",
        permutations=permutations,
        check=False,
    )


def _homomorphism_candidates(
    source: FiniteGroup, target: FiniteGroup, exact_orders: bool
) -> Iterator[GroupHomomorphism]:
    """Yield homomorphisms source -> target by extending images of a generating set."""
    generators = source.generating_set()
    orders = [source.element_order(g) for g in generators]
    target_orders = [target.element_order(t) for t in range(len(target))]
    choices = [
        [
            t
            for t in range(len(target))
            if (target_orders[t] == order if exact_orders else order % target_orders[t] == 0)
        ]
        for order in orders
    ]

    words = source.words(generators)
    walk = sorted(words, key=lambda a: (len(words[a]), a))
    for assignment in product(*choices):
        images = [-1] * len(source)
        images[0] = 0
        consistent = True
        for element in walk:
            for position, generator in enumerate(generators):
                step = int(source.table[element, generator])
                value = int(target.table[images[element], assignment[position]])
                if images[step] == -1:
                    images[step] = value
                elif images[step] != value:
                    consistent = False
                    break
            if not consistent:
                break
        if consistent:
            yield GroupHomomorphism(source, target, tuple(images))


def homomorphisms(source: FiniteGroup, target: FiniteGroup) -> List[GroupHomomorphism]:
    """Return every homomorphism source -> target, ordered by image tuple."""
    found = sorted(_homomorphism_candidates(source, target, False), key=lambda h: h.images)
    logger.bind(source=source.name, target=target.name, homomorphisms=len(found)).debug(
        "homomorphisms_enumerated"
    )
    return found


def find_isomorphism(left: FiniteGroup, right: FiniteGroup) -> Optional[GroupHomomorphism]:
    """Return an isomorphism left -> right, or None if the groups are not isomorphic."""
    if len(left) != len(right):
        return None
    for candidate in _homomorphism_candidates(left, right, True):
        if candidate.is_injective():
            return candidate
    return None
