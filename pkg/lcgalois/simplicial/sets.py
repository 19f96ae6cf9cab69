"""Truncated simplicial sets, their skeleta and coskeleta.

Level k holds the k-simplices. ``faces[k][i]`` maps level k to level k - 1 for 0 <= i <= k and
``degeneracies[k][j]`` maps level k to level k + 1 for 0 <= j <= k < n. A simplex of a
coskeleton above its base level is a family (x_0, ..., x_k) with d_i = x_i. The source of an
edge is d_1 and its target d_0.

A monotone map [m] -> [k] is an operator, stored as the tuple of its values.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    List,
    Optional,
    Sequence,
    Tuple,
)

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.core.groups import FiniteGroup
from lcgalois.exceptions import InvalidParam, InvariantViolation, TruncationError
from lcgalois.typing import DiagnosticCollector, Mapping, Verdict

logger = structlog.getLogger("lcgalois.simplicial")

Operator = Tuple[int, ...]

# (level, alpha: [level] -> [1], simplex)
_HomotopyKey = Tuple[int, Operator, int]


def validate_simplicial(
    levels: Sequence[Sequence[str]],
    faces: Sequence[Sequence[Sequence[int]]],
    degeneracies: Sequence[Sequence[Sequence[int]]],
) -> Verdict:
    """Check shapes and every simplicial identity expressible within the truncation.

    The identities are, for a simplex x:

    * d_i d_j x = d_(j-1) d_i x for i < j,
    * d_i s_j x = s_(j-1) d_i x for i < j, d_j s_j x = d_(j+1) s_j x = x and
      d_i s_j x = s_j d_(i-1) x for i > j + 1,
    * s_i s_j x = s_(j+1) s_i x for i <= j.
    """
    collector = DiagnosticCollector()
    top = len(levels) - 1
    sizes = [len(level) for level in levels]
    if top < 0:
        collector.fail("a simplicial set needs level 0")
        return collector.verdict()
    if len(faces) != top + 1 or len(degeneracies) != top + 1:
        collector.fail("faces and degeneracies need one entry per level")
        return collector.verdict()

    for k, level in enumerate(levels):
        if len(set(level)) != len(level):
            collector.fail(f"simplex names at level {k} are not unique", {"level": k})
        if len(faces[k]) != (k + 1 if k else 0):
            collector.fail(f"level {k} needs {k + 1 if k else 0} face maps", {"level": k})
        if len(degeneracies[k]) != (k + 1 if k < top else 0):
            collector.fail(f"level {k} has the wrong number of degeneracies", {"level": k})
    if collector.diagnostics:
        return collector.verdict()

    for k in range(top + 1):
        for i, face in enumerate(faces[k]):
            if len(face) != sizes[k] or any(not 0 <= y < sizes[k - 1] for y in face):
                collector.fail(f"d_{i} at level {k} is not a map to level {k - 1}")
        for j, degeneracy in enumerate(degeneracies[k]):
            if len(degeneracy) != sizes[k] or any(not 0 <= y < sizes[k + 1] for y in degeneracy):
                collector.fail(f"s_{j} at level {k} is not a map to level {k + 1}")
    if collector.diagnostics:
        return collector.verdict()

    def check(label: str, k: int, x: int, left: int, right: int) -> None:
        if left != right:
            collector.fail(
                f"{label} fails at level {k} on {levels[k][x]}",
                {"identity": label, "level": k, "simplex": levels[k][x]},
            )

    d, s = faces, degeneracies
    for k in range(2, top + 1):
        for j in range(k + 1):
            for i in range(j):
                label = f"d_{i} d_{j} = d_{j - 1} d_{i}"
                for x in range(sizes[k]):
                    check(label, k, x, d[k - 1][i][d[k][j][x]], d[k - 1][j - 1][d[k][i][x]])

    for k in range(top):
        for j in range(k + 1):
            for i in range(k + 2):
                for x in range(sizes[k]):
                    left = d[k + 1][i][s[k][j][x]]
                    if i in (j, j + 1):
                        check(f"d_{i} s_{j} = id", k, x, left, x)
                    elif i < j:
                        right = s[k - 1][j - 1][d[k][i][x]]
                        check(f"d_{i} s_{j} = s_{j - 1} d_{i}", k, x, left, right)
                    else:
                        right = s[k - 1][j][d[k][i - 1][x]]
                        check(f"d_{i} s_{j} = s_{j} d_{i - 1}", k, x, left, right)

    for k in range(top - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                label = f"s_{i} s_{j} = s_{j + 1} s_{i}"
                for x in range(sizes[k]):
                    check(label, k, x, s[k + 1][i][s[k][j][x]], s[k + 1][j + 1][s[k][i][x]])
    return collector.verdict()


class TruncatedSimplicialSet:
    """A simplicial set truncated at level n."""

    def __init__(
        self,
        levels: Sequence[Sequence[str]],
        faces: Sequence[Sequence[Sequence[int]]],
        degeneracies: Sequence[Sequence[Sequence[int]]],
        name: str = "S",
        check: bool = True,
    ) -> None:
        """Create a truncated simplicial set.

        :param levels: Simplex names per level.
        :param faces: faces[k][i][x] is d_i x for a simplex x of level k.
        :param degeneracies: degeneracies[k][j][x] is s_j x; the top level has none.
        :raises InvariantViolation: if a simplicial identity fails.
        """
        if check:
            verdict = validate_simplicial(levels, faces, degeneracies)
            if not verdict:
                raise InvariantViolation(verdict.diagnostics)
        self.name = name
        self.levels: Tuple[Tuple[str, ...], ...] = tuple(tuple(level) for level in levels)
        self.faces: Tuple[Tuple[Mapping, ...], ...] = tuple(
            tuple(tuple(int(y) for y in face) for face in level) for level in faces
        )
        self.degeneracies: Tuple[Tuple[Mapping, ...], ...] = tuple(
            tuple(tuple(int(y) for y in degeneracy) for degeneracy in level)
            for level in degeneracies
        )

    def __repr__(self) -> str:
        """Return a short description."""
        return f"<TruncatedSimplicialSet {self.name}: sizes {self.sizes}>"

    @property
    def n(self) -> int:
        """Return the truncation level."""
        return len(self.levels) - 1

    @property
    def sizes(self) -> Tuple[int, ...]:
        """Return the number of simplices per level."""
        return tuple(len(level) for level in self.levels)

    def size(self, level: int) -> int:
        """Return the number of simplices of a level."""
        return len(self.levels[level])

    def simplex(self, level: int, name: str) -> int:
        """Return the index of a named simplex.

        :raises InvalidParam: if the level has no such simplex.
        """
        try:
            return self.levels[level].index(name)
        except (ValueError, IndexError):
            raise InvalidParam(f"no simplex {name!r} at level {level} of {self.name}") from None

    def is_degenerate(self, level: int, simplex: int) -> bool:
        """Check if a simplex is s_j of a simplex one level down."""
        return any(
            self.degeneracies[level - 1][j][self.faces[level][j][simplex]] == simplex
            for j in range(level)
        )

    def nondegenerate(self, level: int) -> List[int]:
        """Return the nondegenerate simplices of a level."""
        return [x for x in range(self.size(level)) if not self.is_degenerate(level, x)]

    def as_dict(self) -> Dict[str, Any]:
        """Return a serializable form."""
        return {
            "name": self.name,
            "levels": [
                {
                    "level": k,
                    "simplices": list(level),
                    "faces": [[level_below[y] for y in face] for face in self.faces[k]]
                    if k
                    else [],
                    "nondegenerate": [level[x] for x in self.nondegenerate(k)],
                }
                for k, (level, level_below) in enumerate(
                    zip(self.levels, ((),) + self.levels[:-1])
                )
            ],
        }

    # Constructors

    @classmethod
    def discrete(
        cls, points: Sequence[str], n: int = 2, name: str = "D"
    ) -> "TruncatedSimplicialSet":
        """Return the constant simplicial set on some points."""
        identity = list(range(len(points)))
        return build(
            [identity] * (n + 1),
            lambda k, i, x: x,
            lambda k, j, x: x,
            lambda k, x: points[x],
            name=name,
        )

    @classmethod
    def point(cls, n: int = 2) -> "TruncatedSimplicialSet":
        """Return the terminal simplicial set."""
        return cls.discrete(["*"], n, name="pt")

    @classmethod
    def nerve(
        cls, group: FiniteGroup, n: int = 2, budget: Optional[GaloisBudgetConfig] = None
    ) -> "TruncatedSimplicialSet":
        """Return the nerve of a group: k-simplices are k-tuples of elements.

        d_0 drops the first element, d_k the last, and the inner faces multiply neighbours;
        s_j inserts the identity at position j.

        :raises BudgetExceeded: if the levels hold more simplices than the SIMPLICES budget.
        """
        budget = resolve_budget(budget)
        total = sum(len(group) ** k for k in range(n + 1))
        if not budget.allows("SIMPLICES", total):
            logger.bind(group=group.name, requested=total).warning("simplices_refused")
        budget.enforce("SIMPLICES", total, f"nerve of {group.name}")

        keys: List[List[Tuple[int, ...]]] = [[()]]
        for _ in range(n):
            keys.append([key + (g,) for key in keys[-1] for g in range(len(group))])

        def face(k: int, i: int, key: Tuple[int, ...]) -> Tuple[int, ...]:
            if i == 0:
                return key[1:]
            if i == k:
                return key[:-1]
            return key[: i - 1] + (group.mul(key[i - 1], key[i]),) + key[i + 1 :]

        return build(
            keys,
            face,
            lambda k, j, key: key[:j] + (group.identity,) + key[j:],
            lambda k, key: "(" + ",".join(group.elements[g] for g in key) + ")",
            name=f"N{group.name}",
        )

    @classmethod
    def circle(cls, n: int = 2) -> "TruncatedSimplicialSet":
        """Return one vertex and one nondegenerate edge: the interval with its ends glued.

        A k-simplex is a monotone 0/1 sequence of length k + 1, the two constant sequences
        being identified.
        """

        def glue(key: Tuple[int, ...]) -> Tuple[int, ...]:
            return (0,) * len(key) if len(set(key)) == 1 else key

        keys = [
            sorted({glue((0,) * zeros + (1,) * (k + 1 - zeros)) for zeros in range(k + 2)})
            for k in range(n + 1)
        ]
        return build(
            keys,
            lambda k, i, key: glue(key[:i] + key[i + 1 :]),
            lambda k, j, key: glue(key[: j + 1] + key[j:]),
            lambda k, key: "".join(str(v) for v in key),
            name="S1",
        )


def build(
    keys: Sequence[Sequence[Hashable]],
    face: Callable[[int, int, Any], Any],
    degeneracy: Callable[[int, int, Any], Any],
    namer: Callable[[int, Any], str],
    name: str = "S",
    check: bool = False,
) -> TruncatedSimplicialSet:
    """Tabulate a simplicial set whose simplices are given by keys.

    :param face: face(k, i, key) is the key of d_i of a level-k simplex.
    :param degeneracy: degeneracy(k, j, key) is the key of s_j of a level-k simplex.
    """
    top = len(keys) - 1
    index = [{key: position for position, key in enumerate(level)} for level in keys]
    faces = [()] + [
        tuple(tuple(index[k - 1][face(k, i, key)] for key in keys[k]) for i in range(k + 1))
        for k in range(1, top + 1)
    ]
    degeneracies = [
        tuple(tuple(index[k + 1][degeneracy(k, j, key)] for key in keys[k]) for j in range(k + 1))
        for k in range(top)
    ] + [()]
    names = [[namer(k, key) for key in level] for k, level in enumerate(keys)]
    return TruncatedSimplicialSet(names, faces, degeneracies, name=name, check=check)


def truncate(simplicial: TruncatedSimplicialSet, level: int) -> TruncatedSimplicialSet:
    """Forget the levels above a level.

    :raises TruncationError: if the set is truncated below that level.
    """
    if not 0 <= level <= simplicial.n:
        raise TruncationError(f"{simplicial.name} is truncated at {simplicial.n}, not {level}")
    return TruncatedSimplicialSet(
        simplicial.levels[: level + 1],
        simplicial.faces[: level + 1],
        simplicial.degeneracies[:level] + ((),),
        name=simplicial.name,
        check=False,
    )


def check_operator(operator: Sequence[int], level: int) -> Operator:
    """Return an operator [m] -> [level] as a tuple.

    :raises InvalidParam: if the map is empty, decreasing or out of range.
    """
    operator = tuple(int(v) for v in operator)
    if not operator:
        raise InvalidParam("an operator needs at least one value")
    if any(b < a for a, b in zip(operator, operator[1:])):
        raise InvalidParam(f"operator {operator} is not monotone")
    if operator[0] < 0 or operator[-1] > level:
        raise InvalidParam(f"operator {operator} does not map into [{level}]")
    return operator


def apply_operator(
    simplicial: TruncatedSimplicialSet, operator: Sequence[int], level: int, simplex: int
) -> int:
    """Return theta^* x for a monotone theta: [m] -> [level] and a level simplex x.

    The faces of the indices theta misses come first, highest index first; the repeated
    values of theta then become degeneracies, lowest position first.

    :raises TruncationError: if m is above the truncation.
    """
    operator = check_operator(operator, level)
    top = len(operator) - 1
    if top > simplicial.n:
        raise TruncationError(f"{simplicial.name} is truncated at {simplicial.n}, not {top}")
    image = set(operator)
    current, current_level = simplex, level
    for missing in reversed([i for i in range(level + 1) if i not in image]):
        current = simplicial.faces[current_level][missing][current]
        current_level -= 1
    for position in range(top):
        if operator[position] == operator[position + 1]:
            current = simplicial.degeneracies[current_level][position][current]
            current_level += 1
    return current


def eilenberg_zilber(
    simplicial: TruncatedSimplicialSet, level: int, simplex: int
) -> Tuple[int, int, Operator]:
    """Write a simplex as sigma^* y with y nondegenerate and sigma a monotone surjection.

    :returns: (level of y, y, sigma)
    """
    for j in range(level):
        below = simplicial.faces[level][j][simplex]
        if simplicial.degeneracies[level - 1][j][below] == simplex:
            r, y, sigma = eilenberg_zilber(simplicial, level - 1, below)
            collapse = [i if i <= j else i - 1 for i in range(level + 1)]
            return r, y, tuple(sigma[c] for c in collapse)
    return level, simplex, tuple(range(level + 1))


def surjections(level: int, onto: int) -> List[Operator]:
    """Return the monotone surjections [level] -> [onto], in lexicographic order."""
    found = []
    for steps in combinations(range(level), onto):
        values = [0]
        for position in range(level):
            values.append(values[-1] + (1 if position in steps else 0))
        found.append(tuple(values))
    return sorted(found)


def skeleton(simplicial: TruncatedSimplicialSet, m: int) -> TruncatedSimplicialSet:
    """Return Sk_m: the same levels up to m, and only degenerate simplices above.

    A simplex above m is a pair of a nondegenerate simplex y of level r <= m and a monotone
    surjection sigma onto [r], named after both.

    :raises TruncationError: if m is above the truncation.
    """
    if not 0 <= m <= simplicial.n:
        raise TruncationError(f"{simplicial.name} is truncated at {simplicial.n}, not {m}")

    def normal(level: int, r: int, y: int, operator: Operator) -> Any:
        image = sorted(set(operator))
        z = apply_operator(simplicial, image, r, y)
        rz, w, sigma = eilenberg_zilber(simplicial, len(image) - 1, z)
        tau = tuple(sigma[image.index(v)] for v in operator)
        if level <= m:
            return apply_operator(simplicial, tau, rz, w)
        return (rz, w, tau)

    def face(k: int, i: int, key: Any) -> Any:
        if k <= m:
            return simplicial.faces[k][i][key]
        r, y, sigma = key
        return normal(k - 1, r, y, sigma[:i] + sigma[i + 1 :])

    def degeneracy(k: int, j: int, key: Any) -> Any:
        if k < m:
            return simplicial.degeneracies[k][j][key]
        r, y, sigma = eilenberg_zilber(simplicial, k, key) if k == m else key
        return (r, y, sigma[: j + 1] + sigma[j:])

    def namer(k: int, key: Any) -> str:
        if k <= m:
            return simplicial.levels[k][key]
        r, y, sigma = key
        return "s" + "".join(str(v) for v in sigma) + ":" + simplicial.levels[r][y]

    keys: List[List[Any]] = [list(range(simplicial.size(k))) for k in range(m + 1)]
    for k in range(m + 1, simplicial.n + 1):
        keys.append(
            [
                (r, y, sigma)
                for r in range(m + 1)
                for y in simplicial.nondegenerate(r)
                for sigma in surjections(k, r)
            ]
        )
    result = build(keys, face, degeneracy, namer, name=f"Sk{m}({simplicial.name})")
    logger.bind(source=simplicial.name, m=m, sizes=result.sizes).debug("skeleton")
    return result


def boundary_families(
    candidates: Sequence[Any], count: int, face: Optional[Callable[[int, Any], Any]]
) -> List[Tuple[Any, ...]]:
    """Return the families (x_0, ..., x_(count-1)) with d_i x_j = d_(j-1) x_i for i < j.

    :param face: face(i, x) is d_i x; None when the candidates are vertices.
    """
    families: List[Tuple[Any, ...]] = []

    def extend(prefix: Tuple[Any, ...]) -> None:
        if len(prefix) == count:
            families.append(prefix)
            return
        j = len(prefix)
        for candidate in candidates:
            if face is None or all(
                face(i, candidate) == face(j - 1, prefix[i]) for i in range(j)
            ):
                extend(prefix + (candidate,))

    extend(())
    return families


def coskeleton(
    simplicial: TruncatedSimplicialSet,
    m: int,
    level: Optional[int] = None,
    budget: Optional[GaloisBudgetConfig] = None,
) -> TruncatedSimplicialSet:
    """Return Cosk_m up to a level, by compatible boundary families.

    Levels up to m are those of the set; level k > m holds the families of k + 1 simplices of
    level k - 1 whose faces match, with d_i the i-th member.

    :param level: The truncation of the result; defaults to that of the set.
    :raises TruncationError: if m is above the truncation.
    :raises BudgetExceeded: if the levels hold more simplices than the SIMPLICES budget.
    """
    if not 0 <= m <= simplicial.n:
        raise TruncationError(f"{simplicial.name} is truncated at {simplicial.n}, not {m}")
    top = simplicial.n if level is None else level
    if top < m:
        raise TruncationError(f"a coskeleton of base {m} is truncated at {m} or above")
    budget = resolve_budget(budget)

    def face(k: int, i: int, key: Any) -> Any:
        return simplicial.faces[k][i][key] if k <= m else key[i]

    def degeneracy(k: int, j: int, key: Any) -> Any:
        if k < m:
            return simplicial.degeneracies[k][j][key]
        return tuple(
            degeneracy(k - 1, j - 1, face(k, i, key))
            if i < j
            else key
            if i in (j, j + 1)
            else degeneracy(k - 1, j, face(k, i - 1, key))
            for i in range(k + 2)
        )

    keys: List[List[Any]] = [list(range(simplicial.size(k))) for k in range(m + 1)]
    names: List[Dict[Any, str]] = [dict(enumerate(simplicial.levels[k])) for k in range(m + 1)]
    total = sum(len(level) for level in keys)
    for k in range(m + 1, top + 1):
        below = k - 1
        families = boundary_families(
            keys[below],
            k + 1,
            (lambda i, x, below=below: face(below, i, x)) if below else None,
        )
        total += len(families)
        if not budget.allows("SIMPLICES", total):
            logger.bind(source=simplicial.name, m=m, level=k, requested=total).warning(
                "simplices_refused"
            )
        budget.enforce("SIMPLICES", total, f"coskeleton of {simplicial.name}")
        keys.append(families)
        names.append(
            {key: "(" + ",".join(names[below][x] for x in key) + ")" for key in families}
        )

    result = build(
        keys,
        face,
        degeneracy,
        lambda k, key: names[k][key],
        name=f"Cosk{m}({simplicial.name})",
    )
    logger.bind(source=simplicial.name, m=m, sizes=result.sizes).debug("coskeleton")
    return result


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """A map of truncated simplicial sets, one level map per level."""

    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    levels: Tuple[Mapping, ...]

    def restrict(self, level: int) -> Tuple[Mapping, ...]:
        """Return the level maps up to a level."""
        return self.levels[: level + 1]


def validate_simplicial_map(morphism: SimplicialMap) -> Verdict:
    """Check that the level maps commute with every face and degeneracy."""
    source, target = morphism.source, morphism.target
    collector = DiagnosticCollector()
    if source.n != target.n or len(morphism.levels) != source.n + 1:
        collector.fail("a simplicial map needs one level map per common level")
        return collector.verdict()
    for k, level in enumerate(morphism.levels):
        if len(level) != source.size(k) or any(not 0 <= y < target.size(k) for y in level):
            collector.fail(f"level {k} is not a map of simplices")
            return collector.verdict()

    f = morphism.levels
    for k in range(1, source.n + 1):
        for i in range(k + 1):
            for x in range(source.size(k)):
                if target.faces[k][i][f[k][x]] != f[k - 1][source.faces[k][i][x]]:
                    collector.fail(
                        f"d_{i} not preserved at level {k} on {source.levels[k][x]}",
                        {"level": k, "face": i, "simplex": source.levels[k][x]},
                    )
    for k in range(source.n):
        for j in range(k + 1):
            for x in range(source.size(k)):
                if target.degeneracies[k][j][f[k][x]] != f[k + 1][source.degeneracies[k][j][x]]:
                    collector.fail(
                        f"s_{j} not preserved at level {k} on {source.levels[k][x]}",
                        {"level": k, "degeneracy": j, "simplex": source.levels[k][x]},
                    )
    return collector.verdict(morphism)


def simplicial_maps(
    source: TruncatedSimplicialSet, target: TruncatedSimplicialSet
) -> List[SimplicialMap]:
    """Enumerate every simplicial map, in lexicographic order of the level maps.

    Degenerate simplices are forced by the degeneracies; the others range over the simplices
    of the target with the right faces.

    :raises TruncationError: if the truncation levels differ.
    """
    if source.n != target.n:
        raise TruncationError(f"{source.name} and {target.name} are truncated differently")
    found: List[SimplicialMap] = []

    def fill(level: int, assigned: List[Mapping]) -> None:
        if level > source.n:
            found.append(SimplicialMap(source, target, tuple(assigned)))
            return
        image: List[Optional[int]] = [None] * source.size(level)
        if level:
            for j in range(level):
                for x in range(source.size(level - 1)):
                    y = source.degeneracies[level - 1][j][x]
                    value = target.degeneracies[level - 1][j][assigned[level - 1][x]]
                    if image[y] is None:
                        image[y] = value
                    elif image[y] != value:
                        return

        def fits(x: int, value: int) -> bool:
            if not level:
                return True
            return all(
                target.faces[level][i][value] == assigned[level - 1][source.faces[level][i][x]]
                for i in range(level + 1)
            )

        if any(v is not None and not fits(x, v) for x, v in enumerate(image)):
            return
        free = [x for x, v in enumerate(image) if v is None]

        def choose(position: int) -> None:
            if position == len(free):
                fill(level + 1, assigned + [tuple(image)])
                return
            x = free[position]
            for value in range(target.size(level)):
                if fits(x, value):
                    image[x] = value
                    choose(position + 1)
            image[x] = None

        choose(0)

    fill(0, [])
    logger.bind(source=source.name, target=target.name, count=len(found)).debug(
        "simplicial_maps"
    )
    return found


def adjunction_check(
    source: TruncatedSimplicialSet,
    target: TruncatedSimplicialSet,
    m: int,
    budget: Optional[GaloisBudgetConfig] = None,
) -> Verdict:
    """Check Hom(Sk_m S, T) = Hom(tr_m S, tr_m T) = Hom(S, Cosk_m T) by enumeration.

    Both outer sets are enumerated and restricted to levels up to m; each restriction must be
    a bijection onto the maps of the m-truncations.

    :raises TruncationError: if T is truncated below S or m is above the truncation of S.
    """
    n = source.n
    if target.n < n:
        raise TruncationError(f"{target.name} is truncated below {source.name}")
    left = simplicial_maps(skeleton(source, m), truncate(target, n))
    right = simplicial_maps(source, coskeleton(target, m, level=n, budget=budget))
    expected = sorted(f.levels for f in simplicial_maps(truncate(source, m), truncate(target, m)))

    collector = DiagnosticCollector()
    for label, maps in (("Hom(Sk_m S, T)", left), ("Hom(S, Cosk_m T)", right)):
        restricted = sorted(f.restrict(m) for f in maps)
        if restricted != expected:
            collector.fail(
                f"restricting {label} to level {m} is not a bijection",
                {"side": label, "count": len(maps), "expected": len(expected)},
            )
    counts = {
        "skeleton_side": len(left),
        "coskeleton_side": len(right),
        "truncated": len(expected),
    }
    logger.bind(source=source.name, target=target.name, m=m, **counts).debug("adjunction_check")
    return collector.verdict(counts)


def _monotone_to_interval(level: int) -> List[Operator]:
    """Return the monotone maps [level] -> [1], constant 0 first and constant 1 last."""
    return [(0,) * zeros + (1,) * (level + 1 - zeros) for zeros in range(level + 1, -1, -1)]


def strictly_homotopic(f: SimplicialMap, g: SimplicialMap) -> Verdict:
    """Search for a strict homotopy [1] x S -> T from f to g.

    A homotopy gives, for every monotone alpha: [k] -> [1] and k-simplex x, a k-simplex
    H(alpha, x) with d_i H(alpha, x) = H(alpha d^i, d_i x), s_j H(alpha, x) =
    H(alpha s^j, s_j x), H(0, x) = f(x) and H(1, x) = g(x). The value of a positive verdict
    is the homotopy.

    :raises TruncationError: above truncation 2.
    :raises InvalidParam: if f and g have different sources or targets.
    """
    if f.source is not g.source or f.target is not g.target:
        raise InvalidParam("strict homotopies join maps with the same source and target")
    source, target = f.source, f.target
    if source.n > 2:
        raise TruncationError("strict homotopies are checked up to truncation 2")

    def solve(level: int, values: Dict[_HomotopyKey, int]) -> Optional[Dict[_HomotopyKey, int]]:
        if level > source.n:
            return values
        forced: Dict[_HomotopyKey, int] = {}

        def force(key: _HomotopyKey, value: int) -> bool:
            return forced.setdefault(key, value) == value

        constant0, constant1 = (0,) * (level + 1), (1,) * (level + 1)
        for x in range(source.size(level)):
            if not force((level, constant0, x), f.levels[level][x]):
                return None
            if not force((level, constant1, x), g.levels[level][x]):
                return None
        if level:
            for alpha in _monotone_to_interval(level - 1):
                for x in range(source.size(level - 1)):
                    below = values[(level - 1, alpha, x)]
                    for j in range(level):
                        lifted = source.degeneracies[level - 1][j][x]
                        key = (level, alpha[: j + 1] + alpha[j:], lifted)
                        if not force(key, target.degeneracies[level - 1][j][below]):
                            return None

        def fits(key: _HomotopyKey, value: int) -> bool:
            if not level:
                return True
            _, alpha, x = key
            return all(
                target.faces[level][i][value]
                == values[(level - 1, alpha[:i] + alpha[i + 1 :], source.faces[level][i][x])]
                for i in range(level + 1)
            )

        if any(not fits(key, value) for key, value in forced.items()):
            return None
        free = [
            (level, alpha, x)
            for alpha in _monotone_to_interval(level)
            for x in range(source.size(level))
            if (level, alpha, x) not in forced
        ]
        current = dict(values)
        current.update(forced)

        def choose(position: int) -> Optional[Dict[_HomotopyKey, int]]:
            if position == len(free):
                return solve(level + 1, dict(current))
            key = free[position]
            for value in range(target.size(level)):
                if fits(key, value):
                    current[key] = value
                    result = choose(position + 1)
                    if result is not None:
                        return result
            current.pop(key, None)
            return None

        return choose(0)

    homotopy = solve(0, {})
    collector = DiagnosticCollector()
    if homotopy is None:
        collector.fail(f"no strict homotopy from {source.name} to {target.name} joins f and g")
        return collector.verdict()
    return collector.verdict(homotopy)
