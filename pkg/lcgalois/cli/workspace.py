"""Named entities loaded from text-format files."""

import re
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import structlog

from lcgalois.config.budget import GaloisBudgetConfig, resolve_budget
from lcgalois.core.chains import ProGroupoidChain, validate_chain
from lcgalois.core.groups import FiniteGroup, GroupHomomorphism, validate_group
from lcgalois.cover.covers import CoveringMap, cover_from_action, validate_cover
from lcgalois.cover.graphs import Graph, validate_graph
from lcgalois.cover.pi1 import pi1_graph
from lcgalois.exceptions import InvalidParam, InvariantViolation, MissingParam, ParseError
from lcgalois.fpgroup.actions import FiniteAction
from lcgalois.fpgroup.words import Presentation
from lcgalois.gset.gsets import EquivariantMap, GSet, validate_gset
from lcgalois.orbifold.actions import GraphAction, validate_action
from lcgalois.simplicial.sets import TruncatedSimplicialSet, validate_simplicial
from lcgalois.tools import compose, digest, identity_perm, perm_from_cycles
from lcgalois.typing import Perm, Verdict

from .textformat import Section, read_sections, split_list

logger = structlog.getLogger("lcgalois.cli")

# Sections are built in this order, so references always point backwards.
BUILD_ORDER = (
    "group",
    "group-perm",
    "presentation",
    "graph",
    "morphism",
    "chain",
    "gset",
    "eqmap",
    "cover",
    "action",
    "simplicial",
)

_EDGE_RE = re.compile(r"\(\s*([^(),]+?)\s*,\s*([^(),]+?)\s*\)")
_LEVEL_RE = re.compile(r"^level(\d+)$")

GROUP_FAMILIES: Dict[str, Callable[..., FiniteGroup]] = {
    "cyclic": FiniteGroup.cyclic,
    "dihedral": FiniteGroup.dihedral,
    "symmetric": FiniteGroup.symmetric,
    "alternating": FiniteGroup.alternating,
}

GRAPH_FAMILIES: Dict[str, Callable[..., Graph]] = {
    "cycle": Graph.cycle,
    "bouquet": Graph.bouquet,
    "theta": Graph.theta,
    "complete": Graph.complete,
    "path": Graph.path,
}

VALIDATORS: Dict[str, Callable[[Any], Verdict]] = {
    "group": lambda group: validate_group(group.elements, group.table),
    "morphism": lambda morphism: morphism.validate(),
    "chain": validate_chain,
    "gset": lambda gset: validate_gset(gset.group, gset.carrier, gset.act),
    "eqmap": lambda mapping: mapping.validate(),
    "presentation": lambda presentation: Verdict(ok=True, value=presentation),
    "graph": lambda graph: validate_graph(graph.vertices, graph.attach, graph.involution),
    "cover": validate_cover,
    "action": validate_action,
    "simplicial": lambda s: validate_simplicial(s.levels, s.faces, s.degeneracies),
}


def _kind(section_kind: str) -> str:
    """Return the entity kind a section declares."""
    return "group" if section_kind == "group-perm" else section_kind


def _split_top_level(text: str) -> List[str]:
    """Split on commas outside parentheses."""
    items, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "," and depth == 0:
            items.append("".join(current).strip())
            current = []
        else:
            current.append(char)
    items.append("".join(current).strip())
    return [item for item in items if item]


@dataclass(frozen=True)
class Entity:
    """A named value and the section it was declared in."""

    kind: str
    value: Any
    section: Section


class Workspace:
    """The entities of one or more input files; names are unique across all of them."""

    def __init__(self, budget: Optional[GaloisBudgetConfig] = None) -> None:
        """Create an empty workspace."""
        self.budget = resolve_budget(budget)
        self.entities: Dict[str, Entity] = {}
        self.sources: List[str] = []
        self._texts: List[str] = []
        self._declared: Dict[str, Section] = {}

    def __len__(self) -> int:
        """Return the number of entities."""
        return len(self.entities)

    @property
    def digest(self) -> str:
        """Return the sha256 digest of the input texts, in input order."""
        return digest(self._texts)

    def names(self, kind: Optional[str] = None) -> List[str]:
        """Return entity names in declaration order, optionally of one kind."""
        return [name for name, e in self.entities.items() if kind is None or e.kind == kind]

    def summary(self) -> Dict[str, List[str]]:
        """Return entity names by kind."""
        kinds: Dict[str, List[str]] = {}
        for name, entity in self.entities.items():
            kinds.setdefault(entity.kind, []).append(name)
        return kinds

    def raw(self, name: str, kind: str) -> Any:
        """Return an entity without validating it.

        :raises MissingParam: if no entity has the name.
        :raises InvalidParam: if the entity is of another kind.
        """
        if name not in self.entities:
            raise MissingParam(f"no {kind} named {name!r}")
        entity = self.entities[name]
        if entity.kind != kind:
            raise InvalidParam(f"{name} is a {entity.kind}, not a {kind}")
        return entity.value

    def validate(self, name: str) -> Verdict:
        """Run the validator of an entity's kind."""
        if name not in self.entities:
            raise MissingParam(f"no entity named {name!r}")
        entity = self.entities[name]
        return VALIDATORS[entity.kind](entity.value)

    def get(self, name: str, kind: str) -> Any:
        """Return a valid entity.

        :raises InvariantViolation: with the diagnostics of the entity's validator.
        """
        value = self.raw(name, kind)
        verdict = self.validate(name)
        if not verdict:
            logger.bind(name=name, kind=kind).warning("invalid_entity")
            raise InvariantViolation([f"{name}: {d}" for d in verdict.diagnostics])
        return value

    # Loading

    def add_text(self, text: str, source: str = "") -> List[Section]:
        """Register the sections of a text; they are built by ``resolve``."""
        sections = read_sections(text, source)
        for section in sections:
            name = section.name
            if not name and section.kind == "morphism":
                name = f"{section.optional('from')}->{section.optional('to')}"
                section.fields["name"] = name
            if not name:
                raise section.error(f"[{section.kind}] needs name=")
            if name in self._declared:
                first = self._declared[name]
                raise section.error(
                    f"{name} already declared at {first.source or '<input>'}:{first.line}", "name"
                )
            self._declared[name] = section
        self.sources.append(source)
        self._texts.append(text)
        return sections

    def resolve(self, sections: Sequence[Section]) -> None:
        """Build every section, in dependency order.

        :raises ParseError: for malformed fields and dangling references.
        """
        builders: Dict[str, Callable[[Section], Any]] = {
            "group": self._build_group,
            "group-perm": self._build_group_perm,
            "presentation": self._build_presentation,
            "graph": self._build_graph,
            "morphism": self._build_morphism,
            "chain": self._build_chain,
            "gset": self._build_gset,
            "eqmap": self._build_eqmap,
            "cover": self._build_cover,
            "action": self._build_action,
            "simplicial": self._build_simplicial,
        }
        for kind in BUILD_ORDER:
            for section in sections:
                if section.kind != kind:
                    continue
                try:
                    value = builders[kind](section)
                except (InvalidParam, InvariantViolation, ValueError) as exc:
                    raise section.error(f"{section.name}: {exc}") from exc
                self.entities[section.name] = Entity(_kind(kind), value, section)
        logger.bind(entities=len(self.entities), sources=len(self.sources)).debug(
            "workspace_loaded"
        )

    def _ref(self, section: Section, key: str, kind: str, name: str = "") -> Any:
        """Resolve a reference to an already built entity; the name defaults to the field."""
        name = name or section.require(key)
        declared = self._declared.get(name)
        if declared is None:
            raise section.error(f"{key}={name}: no {kind} named {name!r}", key)
        if _kind(declared.kind) != kind:
            raise section.error(f"{key}={name}: {name} is a {declared.kind}, not a {kind}", key)
        return self.entities[name].value

    # Builders

    def _build_group(self, section: Section) -> FiniteGroup:
        if section.has("family"):
            family = section.require("family")
            if family == "quaternion":
                group = FiniteGroup.quaternion()
            elif family == "trivial":
                group = FiniteGroup.trivial()
            elif family in GROUP_FAMILIES:
                group = GROUP_FAMILIES[family](section.integer("n"))
            else:
                raise section.error(f"unknown group family {family!r}", "family")
        else:
            elements = section.names("elements")
            rows = section.rows("table")
            if len(rows) != len(elements):
                raise section.error(
                    f"table has {len(rows)} rows for {len(elements)} elements", "table"
                )
            table = []
            for row in rows:
                entries = split_list(row)
                if len(entries) != len(elements):
                    raise section.error(f"table row {row!r} has {len(entries)} entries", "table")
                table.append([section.lookup("table", e, elements, "element") for e in entries])
            group = FiniteGroup(elements, table, check=False)
        group.name = section.name
        return group

    def _build_group_perm(self, section: Section) -> FiniteGroup:
        degree = section.integer("degree")
        if degree < 1:
            raise section.error("degree must be at least 1", "degree")
        generators = []
        for text in _split_top_level(section.optional("gens")):
            try:
                generators.append(perm_from_cycles(text, degree))
            except ValueError as exc:
                raise section.error(str(exc), "gens") from exc
        return FiniteGroup.from_permutations(generators, degree, name=section.name)

    def _build_presentation(self, section: Section) -> Presentation:
        try:
            return Presentation.parse(
                section.optional("gens"), section.optional("rels"), name=section.name
            )
        except (InvalidParam, ValueError) as exc:
            raise section.error(str(exc), "rels" if section.has("rels") else "gens") from exc

    def _build_graph(self, section: Section) -> Graph:
        if section.has("family"):
            family = section.require("family")
            if family not in GRAPH_FAMILIES:
                raise section.error(f"unknown graph family {family!r}", "family")
            return GRAPH_FAMILIES[family](section.integer("n"), name=section.name)

        vertices = section.names("vertices")
        text = section.optional("edges")
        if _EDGE_RE.sub("", text).replace(",", "").strip():
            raise section.error(f"edges must be (u,v) pairs, got {text.strip()!r}", "edges")
        edges = [
            (
                section.lookup("edges", u, vertices, "vertex"),
                section.lookup("edges", v, vertices, "vertex"),
            )
            for u, v in _EDGE_RE.findall(text)
        ]
        return Graph.from_edges(vertices, edges, name=section.name)

    def _build_morphism(self, section: Section) -> GroupHomomorphism:
        source = self._ref(section, "from", "group")
        target = self._ref(section, "to", "group")
        mapping = section.pairs("map", source.elements, target.elements, ("element", "element"))
        missing = [source.elements[g] for g in range(len(source)) if g not in mapping]
        if missing:
            raise section.error(f"map misses {', '.join(missing)}", "map")
        return GroupHomomorphism(source, target, tuple(mapping[g] for g in range(len(source))))

    def _build_chain(self, section: Section) -> ProGroupoidChain:
        groups = []
        for name in section.names("levels"):
            groups.append(self._ref(section, "levels", "group", name))
        homomorphisms = []
        for k, name in enumerate(split_list(section.optional("maps"))):
            morphism = self._ref(section, "maps", "morphism", name)
            if k + 1 >= len(groups) or (morphism.source, morphism.target) != (
                groups[k + 1],
                groups[k],
            ):
                raise section.error(f"map {name} does not run from level {k + 1} to {k}", "maps")
            homomorphisms.append(morphism)
        if len(homomorphisms) != len(groups) - 1:
            raise section.error("a chain of n levels needs n - 1 maps", "maps")
        return ProGroupoidChain.from_homomorphisms(groups, homomorphisms)

    def _extend(
        self, section: Section, group: FiniteGroup, images: Dict[int, Perm], size: int
    ) -> List[Perm]:
        """Extend images of generating elements to every element of a left action."""
        generators = sorted(g for g in images if g != group.identity)
        words = group.words(generators)
        if len(words) != len(group):
            raise section.error(f"the elements given in act do not generate {group.name}", "act")
        table = []
        for element in range(len(group)):
            if element in images:
                table.append(images[element])
                continue
            perm = identity_perm(size)
            for position in words[element]:
                perm = compose(images[generators[position]], perm)
            table.append(perm)
        return table

    def _element_rows(self, section: Section, group: FiniteGroup) -> List[Tuple[int, str]]:
        """Split ``g: ...`` rows of the act field."""
        rows = []
        for row in section.rows("act"):
            if ":" not in row:
                raise section.error(f"expected element: images, got {row!r}", "act")
            element, rest = row.split(":", 1)
            rows.append((section.lookup("act", element, group.elements, "element"), rest))
        return rows

    def _build_gset(self, section: Section) -> GSet:
        group = self._ref(section, "group", "group")
        family = section.optional("family")
        if family == "regular":
            return GSet.regular(group, name=section.name)
        if family == "natural":
            return GSet.natural(group, name=section.name)
        if family == "trivial":
            return GSet.trivial(group, section.integer("points", 1), name=section.name)
        if family == "cosets":
            subgroup = [
                section.lookup("subgroup", e, group.elements, "element")
                for e in section.names("subgroup")
            ]
            if not group.is_subgroup(subgroup):
                raise section.error("subgroup is not a subgroup", "subgroup")
            return GSet.cosets(group, sorted(set(subgroup)), name=section.name)
        if family:
            raise section.error(f"unknown gset family {family!r}", "family")

        carrier = section.names("carrier")
        images = {}
        for element, text in self._element_rows(section, group):
            images[element] = section.cycles("act", text, carrier)
        act = self._extend(section, group, images, len(carrier))
        return GSet(group, carrier, act, name=section.name, check=False)

    def _build_eqmap(self, section: Section) -> EquivariantMap:
        source = self._ref(section, "from", "gset")
        target = self._ref(section, "to", "gset")
        mapping = section.pairs("map", source.carrier, target.carrier, ("point", "point"))
        missing = [source.carrier[x] for x in range(len(source)) if x not in mapping]
        if missing:
            raise section.error(f"map misses {', '.join(missing)}", "map")
        return EquivariantMap(source, target, tuple(mapping[x] for x in range(len(source))))

    def _build_cover(self, section: Section) -> CoveringMap:
        base = self._ref(section, "base", "graph")
        if section.has("monodromy") or section.has("degree"):
            return self._cover_from_monodromy(section, base)

        total = self._ref(section, "total", "graph")
        vmap = section.pairs("vmap", total.vertices, base.vertices, ("vertex", "vertex"))
        missing = [total.vertices[z] for z in range(len(total.vertices)) if z not in vmap]
        if missing:
            raise section.error(f"vmap misses {', '.join(missing)}", "vmap")
        dmap = section.pairs("dmap", total.dart_names, base.dart_names, ("dart", "dart"))
        for dart, image in list(dmap.items()):
            dmap.setdefault(total.involution[dart], base.involution[image])
        missing = [total.dart_names[d] for d in range(total.num_darts) if d not in dmap]
        if missing:
            raise section.error(f"dmap misses {', '.join(missing)}", "dmap")
        return CoveringMap(
            total,
            base,
            tuple(vmap[z] for z in range(len(total.vertices))),
            tuple(dmap[d] for d in range(total.num_darts)),
        )

    def _cover_from_monodromy(self, section: Section, base: Graph) -> CoveringMap:
        """Build a cover from the monodromy of the pi1 generators at a vertex."""
        default = base.vertices[0] if base.vertices else ""
        at = section.lookup("at", section.optional("at", default), base.vertices, "vertex")
        degree = section.integer("degree")
        _, tree = pi1_graph(base, at)
        images = {name: identity_perm(degree) for name in tree.names}
        for row in [r.strip() for r in section.optional("monodromy").split(";") if r.strip()]:
            if ":" not in row:
                raise section.error(f"expected generator: cycles, got {row!r}", "monodromy")
            generator, text = (part.strip() for part in row.split(":", 1))
            if generator not in images:
                raise section.error(
                    f"{generator} is not a generator of pi1, expected one of "
                    f"{', '.join(tree.names)}",
                    "monodromy",
                )
            try:
                images[generator] = perm_from_cycles(text, degree)
            except ValueError as exc:
                raise section.error(str(exc), "monodromy") from exc
        action = FiniteAction(tree.names, degree, tuple(images[n] for n in tree.names))
        cover = cover_from_action(base, at, action)
        cover.total.name = section.name
        return cover

    def _infer_darts(self, section: Section, graph: Graph, element: str, vertices: Perm) -> Perm:
        """Derive dart images from vertex images when no two darts share both ends."""
        image = []
        for dart in range(graph.num_darts):
            start, end = vertices[graph.source(dart)], vertices[graph.target(dart)]
            candidates = [d for d in graph.darts_at(start) if graph.target(d) == end]
            if len(candidates) != 1:
                raise section.error(
                    f"dart images of {element} are ambiguous; give them after |", "act"
                )
            image.append(candidates[0])
        return tuple(image)

    def _build_action(self, section: Section) -> GraphAction:
        group = self._ref(section, "group", "group")
        graph = self._ref(section, "graph", "graph")
        images = {}
        for element, text in self._element_rows(section, group):
            vertex_text, _, dart_text = text.partition("|")
            vertices = section.cycles("act", vertex_text, graph.vertices)
            if dart_text.strip():
                darts = section.cycles("act", dart_text, graph.dart_names)
            else:
                darts = self._infer_darts(section, graph, group.elements[element], vertices)
            images[element] = (vertices, darts)
        return GraphAction.from_images(group, graph, images, name=section.name)

    def _build_simplicial(self, section: Section) -> TruncatedSimplicialSet:
        family = section.optional("family")
        n = section.integer("n", 2)
        if family:
            if family == "point":
                simplicial = TruncatedSimplicialSet.point(n)
            elif family == "circle":
                simplicial = TruncatedSimplicialSet.circle(n)
            elif family == "discrete":
                simplicial = TruncatedSimplicialSet.discrete(section.names("points"), n)
            elif family == "nerve":
                group = self._ref(section, "group", "group")
                simplicial = TruncatedSimplicialSet.nerve(group, n, self.budget)
            else:
                raise section.error(f"unknown simplicial family {family!r}", "family")
            simplicial.name = section.name
            return simplicial

        levels_found = sorted(
            int(match.group(1)) for match in map(_LEVEL_RE.match, section.fields) if match
        )
        if not levels_found or levels_found != list(range(levels_found[-1] + 1)):
            raise section.error("levels must be level0, level1, ... without gaps")
        levels = [section.names(f"level{k}") for k in levels_found]
        top = len(levels) - 1

        def operator(key: str, source: Sequence[str], target: Sequence[str]) -> Tuple[int, ...]:
            mapping = section.pairs(key, source, target, ("simplex", "simplex"))
            missing = [source[x] for x in range(len(source)) if x not in mapping]
            if missing:
                raise section.error(f"{key} misses {', '.join(missing)}", key)
            return tuple(mapping[x] for x in range(len(source)))

        faces: List[List[Tuple[int, ...]]] = [[]]
        degeneracies: List[List[Tuple[int, ...]]] = []
        for k in range(1, top + 1):
            faces.append([operator(f"d{k}_{i}", levels[k], levels[k - 1]) for i in range(k + 1)])
        for k in range(top):
            degeneracies.append(
                [operator(f"s{k}_{j}", levels[k], levels[k + 1]) for j in range(k + 1)]
            )
        degeneracies.append([])
        return TruncatedSimplicialSet(levels, faces, degeneracies, name=section.name, check=False)


def parse_texts(
    texts: Sequence[Tuple[str, str]], budget: Optional[GaloisBudgetConfig] = None
) -> Workspace:
    """Build a workspace from (source, text) pairs.

    :raises ParseError: at the first malformed section or dangling reference.
    """
    workspace = Workspace(budget)
    sections: List[Section] = []
    for source, text in texts:
        sections.extend(workspace.add_text(text, source))
    workspace.resolve(sections)
    return workspace


def load_workspace(
    paths: Sequence[str], budget: Optional[GaloisBudgetConfig] = None
) -> Workspace:
    """Read and parse input files.

    :raises ParseError: for unreadable files as well as malformed input.
    """
    texts = []
    for path in paths:
        try:
            with open(path, encoding="utf-8") as handle:
                texts.append((path, handle.read()))
        except (OSError, UnicodeDecodeError) as exc:
            raise ParseError(f"cannot read input: {exc}", 0, 0, path) from exc
    return parse_texts(texts, budget)
