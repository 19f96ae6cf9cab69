"""Tools for lcgalois.

This package is NOT allowed to import anything from internally in lcgalois, except
lcgalois.typing.
"""

import hashlib
import re
from collections import deque
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from lcgalois.typing import Perm

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity_perm(n: int) -> Perm:
    """Return the identity permutation on n points."""
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return "p then q": the permutation i -> q[p[i]]."""
    return tuple(q[i] for i in p)


def invert(p: Sequence[int]) -> Perm:
    """Return the inverse permutation."""
    inverse = [0] * len(p)
    for i, image in enumerate(p):
        inverse[image] = i
    return tuple(inverse)


def is_identity(p: Sequence[int]) -> bool:
    """Check if a permutation fixes every point."""
    return all(i == image for i, image in enumerate(p))


def is_permutation(p: Sequence[int], n: int) -> bool:
    """Check that p is a bijection of {0, ..., n-1}."""
    return len(p) == n and sorted(p) == list(range(n))


def perm_from_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation over 1..n, e.g. "(1 2)(3 4)", into a 0-based image tuple.

    :raises ValueError: if a point is out of range or repeated.
    """
    image = list(range(n))
    seen = set()
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"not cycle notation: {text!r}")

    for cycle in _CYCLE_RE.findall(stripped):
        points = [int(token) - 1 for token in cycle.replace(",", " ").split()]
        for point in points:
            if point < 0 or point >= n:
                raise ValueError(f"point {point + 1} outside 1..{n}")
            if point in seen:
                raise ValueError(f"point {point + 1} repeated in {text!r}")
            seen.add(point)
        for k, point in enumerate(points):
            image[point] = points[(k + 1) % len(points)]
    return tuple(image)


def perm_to_cycles(p: Sequence[int]) -> str:
    """Render a permutation in 1-based cycle notation; the identity renders as "()"."""
    seen = set()
    cycles: List[str] = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        current = p[start]
        while current != start:
            cycle.append(current)
            seen.add(current)
            current = p[current]
        cycles.append("(" + " ".join(str(i + 1) for i in cycle) + ")")
    return "".join(cycles) or "()"


def perm_orbits(perms: Iterable[Sequence[int]], n: int) -> List[Tuple[int, ...]]:
    """Return the orbits of the group generated by perms on {0, ..., n-1}."""
    perms = list(perms)
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        queue = deque([start])
        while queue:
            point = queue.popleft()
            for perm in perms:
                for other in (perm[point], perm.index(point)):
                    if not seen[other]:
                        seen[other] = True
                        orbit.append(other)
                        queue.append(other)
        orbits.append(tuple(sorted(orbit)))
    return orbits


def generated_perms(gens: Iterable[Sequence[int]], n: int) -> List[Perm]:
    """Return the elements of the permutation group generated by gens, sorted.

    The identity sorts first, so it is always at index 0.
    """
    gens = [tuple(g) for g in gens]
    identity = identity_perm(n)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in gens:
            product = compose(current, gen)
            if product not in seen:
                seen.add(product)
                queue.append(product)
    return sorted(seen)


def digest(chunks: Iterable[str]) -> str:
    """Return the sha256 hex digest of a sequence of text chunks."""
    sha = hashlib.sha256()
    for chunk in chunks:
        sha.update(chunk.encode("utf-8"))
        sha.update(b"\0")
    return sha.hexdigest()


def invert_mapping(items: Sequence[Any]) -> Dict[Any, int]:
    """Return a lookup from item to its position."""
    return {item: index for index, item in enumerate(items)}
