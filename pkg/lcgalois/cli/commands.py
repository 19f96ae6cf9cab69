"""The operations behind the command line, one function per subcommand.

Each command takes the parsed arguments, the loaded workspace and the effective budget, runs
exactly one module operation and returns an Outcome whose payload lets a reader re-verify the
claim.
"""

import argparse
from typing import Any, Dict, List

import structlog

from lcgalois.config.budget import GaloisBudgetConfig
from lcgalois.core.chains import validate_chain
from lcgalois.core.quotients import finite_quotients
from lcgalois.cover.covers import (
    cover_from_action,
    deck_group,
    is_galois_cover,
    is_trivialized_by,
    monodromy,
    validate_cover,
)
from lcgalois.cover.graphs import Graph
from lcgalois.cover.pi1 import pi1_graph
from lcgalois.cover.trivialization import (
    factors_through,
    pi1_inverse_system,
    trivialization_quotient,
)
from lcgalois.exceptions import InvalidParam
from lcgalois.fpgroup.abelian import abelianization, relation_matrix
from lcgalois.fpgroup.actions import (
    FiniteAction,
    enumerate_actions,
    quotient_spectrum,
    satisfies,
    transitive_action_classes,
)
from lcgalois.fpgroup.evidence import compare_presentations
from lcgalois.gset.gsets import (
    GSet,
    count_automorphisms,
    find_equivariant_isomorphism,
    is_connected,
    is_galois,
    normality_crosscheck,
    orbits,
)
from lcgalois.gset.sequences import galois_exact_sequence, restriction_aut_card
from lcgalois.gset.slices import Transversal, hom_transport, hset_to_slice, slice_to_hset
from lcgalois.orbifold.actions import is_free, quotient_graph
from lcgalois.orbifold.equivariant import (
    canonical_galois_cover,
    connected_classes,
    enumerate_equivariant_covers,
    equivariant_aut,
    is_galois_equivariant,
    validate_equivariant_cover,
)
from lcgalois.orbifold.pi1 import check_labelling, orbifold_pi1, quotient_exact_sequence
from lcgalois.simplicial.graphs import (
    cech_nerve,
    is_hypercovering,
    pi0_levelwise,
    validate_simplicial_graph,
)
from lcgalois.simplicial.pi1 import edge_path_group, nerve_quotient_check
from lcgalois.simplicial.sets import (
    TruncatedSimplicialSet,
    adjunction_check,
    coskeleton,
    skeleton,
    validate_simplicial,
)
from lcgalois.tools import perm_from_cycles, perm_orbits, perm_to_cycles

from .report import Outcome
from .workspace import Workspace

logger = structlog.getLogger("lcgalois.cli")

Namespace = argparse.Namespace


def _vertex(graph: Graph, name: str) -> int:
    """Return a base vertex by name; the first vertex when no name is given."""
    graph.require_vertices()
    return graph.vertex(name) if name else 0


def _gset_dict(gset: GSet) -> Dict[str, Any]:
    """Return a G-set with the image list of every element."""
    return {
        "name": gset.name,
        "group": gset.group.name,
        "carrier": list(gset.carrier),
        "act": {
            gset.group.elements[g]: [gset.carrier[y] for y in gset.permutation(g)]
            for g in range(len(gset.group))
        },
    }


# core


def core_validate(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Validate one named entity, or every entity of the workspace."""
    names = [args.name] if args.name else workspace.names()
    entities = {}
    for name in names:
        verdict = workspace.validate(name)
        entities[name] = {"kind": workspace.entities[name].kind, **verdict.as_dict()}
    invalid = [name for name, entry in entities.items() if not entry["ok"]]
    return Outcome(
        not invalid,
        {"entities": entities, "invalid": invalid},
        {"entities": len(names), "invalid": ", ".join(invalid) or "none"},
    )


def core_quotients(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """List the finite quotients of a group with kernels and projections."""
    group = workspace.get(args.group, "group")
    quotients = finite_quotients(group, budget)
    entries = []
    for quotient in quotients:
        entry = quotient.as_dict()
        entry["elements"] = list(quotient.group.elements)
        entry["normal"] = group.is_normal(quotient.kernel)
        entry["homomorphism"] = quotient.projection.validate().ok
        entries.append(entry)
    orders = [entry["order"] for entry in entries]
    ok = (
        all(entry["normal"] and entry["homomorphism"] for entry in entries)
        and len(group) in orders
        and 1 in orders
    )
    return Outcome(
        ok,
        {"group": group.name, "order": len(group), "quotients": entries},
        {"group": group.name, "quotients": len(entries)},
    )


# gset


def gset_orbits(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Partition a G-set into orbits."""
    gset = workspace.get(args.gset, "gset")
    blocks = [[gset.carrier[y] for y in block] for block in orbits(gset)]
    return Outcome(
        True,
        {"gset": _gset_dict(gset), "orbits": blocks, "connected": len(blocks) == 1},
        {"orbits": len(blocks)},
    )


def gset_galois(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Decide if a G-set is Galois, cross-checked against normality and the automorphism count.

    The answer is in the payload; the outcome fails only if the criteria disagree on a
    connected G-set.
    """
    gset = workspace.get(args.gset, "gset")
    point = gset.point(args.point) if args.point else 0
    verdict = is_galois(gset)
    crosscheck = normality_crosscheck(gset, point)
    consistent = not is_connected(gset) or len(set(crosscheck.values())) == 1
    return Outcome(
        consistent,
        {
            "gset": _gset_dict(gset),
            "galois": verdict.ok,
            "verdict": verdict.as_dict(),
            "crosscheck": crosscheck,
            "automorphisms": count_automorphisms(gset),
        },
        {"galois": verdict.ok},
    )


def gset_slice(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Send a G-set over Y to its fiber as an H-set and back, and transport hom-sets."""
    projection = workspace.get(args.map, "eqmap")
    over = projection.target
    base = over.point(args.base) if args.base else 0
    fiber = slice_to_hset(projection, base)

    transversal = Transversal.canonical(over, base)
    rebuilt = hset_to_slice(fiber.hset, over, transversal)
    back = hom_transport(projection, rebuilt, base)
    over_iso = next(
        (f for f in back.slice_maps if len(set(f)) == len(f) == len(rebuilt.source)), None
    )
    fiber_again = slice_to_hset(rebuilt, base)
    hset_iso = find_equivariant_isomorphism(fiber.hset, fiber_again.hset)

    result: Dict[str, Any] = {
        "base": over.carrier[base],
        "stabilizer": [over.group.elements[g] for g in fiber.inclusion.images],
        "fiber": _gset_dict(fiber.hset),
        "transversal": {
            over.carrier[y]: over.group.elements[g] for y, g in enumerate(transversal.elements)
        },
        "round_trip": {
            "slice_isomorphism": list(over_iso) if over_iso is not None else None,
            "fiber_isomorphism": list(hset_iso) if hset_iso is not None else None,
        },
    }
    ok = over_iso is not None and hset_iso is not None
    if args.other:
        transport = hom_transport(projection, workspace.get(args.other, "eqmap"), base)
        result["hom_transport"] = transport.as_dict()
        ok = ok and transport.verdict.ok
    return Outcome(ok, result, {"fiber": len(fiber.points), "stabilizer": len(fiber.hset.group)})


def gset_exact_seq(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Certify 1 -> H -> G -> Aut Y -> 1 for a Galois G-set."""
    gset = workspace.get(args.gset, "gset")
    point = gset.point(args.point) if args.point else 0
    sequence = galois_exact_sequence(gset, point)
    return Outcome(
        sequence.ok,
        {"gset": _gset_dict(gset), **sequence.as_dict()},
        {"aut_order": len(sequence.aut), "stabilizer": len(sequence.stabilizer)},
    )


def gset_aut_card(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Count Aut of G as a G'-set through f and decide if f is onto."""
    homomorphism = workspace.get(args.morphism, "morphism")
    report = restriction_aut_card(homomorphism, enumerate_maps=args.enumerate)
    return Outcome(
        report.formula_matches and report.verdict_agrees,
        report.as_dict(),
        {"automorphisms": report.automorphisms, "onto": report.onto},
    )


# fp


def fp_actions(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Enumerate the actions of a presentation on {1, ..., n}."""
    presentation = workspace.get(args.presentation, "presentation")
    if args.transitive:
        actions = transitive_action_classes(presentation, args.degree, budget)
    else:
        actions = enumerate_actions(presentation, args.degree, budget)
    return Outcome(
        all(satisfies(presentation, action) for action in actions),
        {
            "presentation": presentation.as_dict(),
            "degree": args.degree,
            "transitive_classes": args.transitive,
            "count": len(actions),
            "actions": [action.as_dict() for action in actions],
        },
        {"actions": len(actions)},
    )


def fp_spectrum(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Count actions per degree up to the spectrum degree."""
    presentation = workspace.get(args.presentation, "presentation")
    degree = args.degree or budget.limit("SPECTRUM_DEGREE")
    budget.enforce("SPECTRUM_DEGREE", degree, f"quotient spectrum to degree {degree}")
    spectrum = quotient_spectrum(presentation, degree, budget)
    return Outcome(
        True,
        {"presentation": presentation.as_dict(), "spectrum": spectrum.as_dict()},
        {"degree": degree, "transitive": list(spectrum.transitive)},
    )


def fp_abel(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Compute the abelianization from the Smith normal form of the relation matrix."""
    presentation = workspace.get(args.presentation, "presentation")
    result = abelianization(presentation)
    return Outcome(
        True,
        {
            "presentation": presentation.as_dict(),
            "relation_matrix": relation_matrix(presentation),
            "abelianization": result.as_dict(),
            "group": str(result),
        },
        {"abelianization": str(result)},
    )


# cover


def cover_pi1(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Present pi1 of a graph at a vertex; the rank must be 1 - chi of the component."""
    graph = workspace.get(args.graph, "graph")
    base = _vertex(graph, args.base)
    presentation, tree = pi1_graph(graph, base)
    component = set(tree.component)
    edges = sum(1 for d in graph.edges() if graph.source(d) in component)
    expected = edges - len(component) + 1
    return Outcome(
        presentation.rank == expected and not presentation.relators,
        {
            "presentation": presentation.as_dict(),
            "tree": tree.as_dict(),
            "rank": presentation.rank,
            "expected_rank": expected,
        },
        {"rank": presentation.rank},
    )


def cover_monodromy(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Compute the monodromy action; its orbits must match the components over the base."""
    cover = workspace.get(args.cover, "cover")
    base = _vertex(cover.base, args.base)
    action = monodromy(cover, base)
    fiber = cover.fiber(base)
    components = {tuple(cover.total.component_of(z)) for z in fiber}
    return Outcome(
        len(action.orbits()) == len(components),
        {
            "base": cover.base.vertices[base],
            "fiber": [cover.total.vertices[z] for z in fiber],
            "action": action.as_dict(),
            "orbits": [list(o) for o in action.orbits()],
            "components_over_base": len(components),
        },
        {"degree": action.degree, "orbits": len(action.orbits())},
    )


def _parse_images(args: Namespace, names: List[str]) -> Dict[str, Any]:
    """Parse ``GEN=CYCLES`` flags; generators not given act trivially."""
    images = {name: tuple(range(args.degree)) for name in names}
    for item in args.image or []:
        generator, _, text = item.partition("=")
        generator = generator.strip()
        if generator not in images:
            raise InvalidParam(
                f"{generator} is not a generator of pi1, expected one of {', '.join(names)}"
            )
        try:
            images[generator] = perm_from_cycles(text, args.degree)
        except ValueError as exc:
            raise InvalidParam(str(exc)) from exc
    logger.bind(
        degree=args.degree, images={g: perm_to_cycles(p) for g, p in images.items()}
    ).debug("cover_images")
    return images


def cover_build(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Build the cover of a graph with a given monodromy and check the round trip."""
    graph = workspace.get(args.graph, "graph")
    base = _vertex(graph, args.base)
    budget.enforce("COVER_DEGREE", args.degree, f"cover of degree {args.degree}")
    _, tree = pi1_graph(graph, base)
    images = _parse_images(args, list(tree.names))
    action = FiniteAction(tree.names, args.degree, tuple(images[n] for n in tree.names))
    cover = cover_from_action(graph, base, action)
    verdict = validate_cover(cover)
    round_trip = verdict.ok and monodromy(cover, base, tree).images == action.images
    return Outcome(
        verdict.ok and round_trip,
        {
            "cover": cover.as_dict(),
            "valid": verdict.as_dict(),
            "action": action.as_dict(),
            "round_trip": round_trip,
        },
        {"degree": args.degree, "vertices": len(cover.total.vertices)},
    )


def cover_deck(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Compute the deck group of a connected cover and decide if the cover is Galois."""
    cover = workspace.get(args.cover, "cover")
    base = _vertex(cover.base, args.base)
    deck = deck_group(cover, base)
    galois = is_galois_cover(cover, base)
    transformations = [
        {
            cover.total.vertices[z]: cover.total.vertices[image]
            for z, image in enumerate(t.vertex_map)
        }
        for t in deck.transformations
    ]
    return Outcome(
        deck.degree % len(deck.group) == 0,
        {"deck": deck.as_dict(), "galois": galois.as_dict(), "transformations": transformations},
        {"order": len(deck.group), "galois": galois.ok},
    )


def cover_trivquot(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Compute G_R for a connected cover; with --check, test a cover against it both ways."""
    cover = workspace.get(args.cover, "cover")
    base = _vertex(cover.base, args.base)
    quotient = trivialization_quotient(cover, base, budget)
    result: Dict[str, Any] = {"quotient": quotient.as_dict()}
    ok = True
    if args.check:
        other = workspace.get(args.check, "cover")
        trivialized = is_trivialized_by(other, cover)
        regular = quotient.regular_action()
        through = factors_through(monodromy(other, base, quotient.tree), regular)
        result["check"] = {
            "cover": args.check,
            "trivialized": trivialized.ok,
            "diagnostics": list(trivialized.diagnostics),
            "factors_through_quotient": through,
        }
        ok = trivialized.ok == through
    return Outcome(ok, result, {"order": len(quotient.group)})


def cover_prosystem(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Build the chain of finite quotients of pi1 seen by covers of degree <= k."""
    graph = workspace.get(args.graph, "graph")
    base = _vertex(graph, args.base)
    system = pi1_inverse_system(graph, base, args.depth, budget)
    verdict = validate_chain(system.chain)
    return Outcome(
        verdict.ok,
        {"system": system.as_dict(), "chain": verdict.as_dict()},
        {"levels": len(system.chain)},
    )


# orbifold


def orbifold_pi1_command(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> Outcome:
    """Present pi1 of [X/G]; free actions are compared with pi1 of X/G."""
    action = workspace.get(args.action, "action")
    base = _vertex(action.graph, args.base)
    data = orbifold_pi1(action, base)
    labelling = check_labelling(data)
    result: Dict[str, Any] = {
        "pi1": data.as_dict(),
        "labelling": labelling.as_dict(),
        "abelianization": str(abelianization(data.presentation)),
        "free": is_free(action),
    }
    ok = labelling.ok
    if result["free"]:
        quotient = quotient_graph(action)
        blocks = perm_orbits(action.vertices, len(action.graph.vertices))
        orbit = next(k for k, block in enumerate(blocks) if base in block)
        comparison = compare_presentations(
            data.presentation, pi1_graph(quotient, orbit)[0], None, budget
        )
        result["quotient_graph"] = quotient.as_dict()
        result["comparison"] = comparison.as_dict()
        ok = ok and comparison.agree
    return Outcome(
        ok, result, {"generators": data.presentation.rank, "free": result["free"]}
    )


def orbifold_canonical(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> Outcome:
    """Build the canonical Galois equivariant cover G x X and certify Aut = G."""
    action = workspace.get(args.action, "action")
    canonical = canonical_galois_cover(action)
    valid = validate_equivariant_cover(canonical)
    galois = is_galois_equivariant(canonical, budget)
    aut = equivariant_aut(canonical, canonical=True, budget=budget)
    isomorphism = aut.isomorphism
    return Outcome(
        valid.ok and galois.ok and isomorphism is not None,
        {
            "cover": canonical.as_dict(),
            "valid": valid.as_dict(),
            "galois": galois.as_dict(),
            "aut": aut.as_dict(),
            "isomorphism": (
                {
                    action.group.elements[h]: aut.group.elements[image]
                    for h, image in enumerate(isomorphism.images)
                }
                if isomorphism is not None
                else None
            ),
        },
        {"degree": canonical.degree, "aut_order": len(aut.group)},
    )


def orbifold_exact_seq(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> Outcome:
    """Collect E1, E2 and E3 for pi1(X) -> pi1([X/G]) -> G."""
    action = workspace.get(args.action, "action")
    base = _vertex(action.graph, args.base)
    report = quotient_exact_sequence(action, base, budget=budget)
    return Outcome(
        report.ok,
        report.as_dict(),
        {
            "E1": report.surjective.ok,
            "E2": report.composite_trivial.ok,
            "E3": report.monodromy_matches,
        },
    )


def orbifold_enumerate(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> Outcome:
    """Enumerate equivariant covers of one degree, up to isomorphism."""
    action = workspace.get(args.action, "action")
    covers = enumerate_equivariant_covers(action, args.degree, budget)
    connected = connected_classes(covers)
    return Outcome(
        all(validate_equivariant_cover(c).ok for c in covers),
        {
            "degree": args.degree,
            "count": len(covers),
            "connected": len(connected),
            "covers": [c.as_dict() for c in covers],
        },
        {"classes": len(covers), "connected": len(connected)},
    )


# simplicial


def _simplicial_source(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> TruncatedSimplicialSet:
    """Return the named simplicial set, or pi0 of the Cech nerve of a named cover."""
    if args.simplicial:
        return workspace.get(args.simplicial, "simplicial")
    if args.cover:
        cover = workspace.get(args.cover, "cover")
        return pi0_levelwise(cech_nerve(cover, 2, budget))
    raise InvalidParam("give --simplicial or --cover")


def simplicial_nerve(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> Outcome:
    """Build the truncated Cech nerve of a cover and its levelwise components."""
    cover = workspace.get(args.cover, "cover")
    nerve = cech_nerve(cover, args.trunc, budget)
    valid = validate_simplicial_graph(nerve)
    hypercovering = is_hypercovering(nerve)
    components = pi0_levelwise(nerve)
    return Outcome(
        valid.ok and hypercovering.ok,
        {
            "nerve": nerve.as_dict(),
            "valid": valid.as_dict(),
            "hypercovering": hypercovering.as_dict(),
            "pi0": components.as_dict(),
        },
        {"levels": nerve.n + 1, "pi0": list(components.sizes)},
    )


def simplicial_pi1(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Present the edge-path group of a simplicial set."""
    simplicial = _simplicial_source(args, workspace, budget)
    base = simplicial.simplex(0, args.base) if args.base else 0
    presentation = edge_path_group(simplicial, base)
    return Outcome(
        True,
        {
            "simplicial": simplicial.name,
            "sizes": list(simplicial.sizes),
            "presentation": presentation.as_dict(),
            "abelianization": str(abelianization(presentation)),
        },
        {"generators": presentation.rank, "relators": len(presentation.relators)},
    )


def simplicial_cosk(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Build the m-skeleton and the m-coskeleton; with --against, check the adjunction."""
    simplicial = workspace.get(args.simplicial, "simplicial")
    cosk = coskeleton(simplicial, args.m, args.level, budget)
    sk = skeleton(simplicial, args.m)
    valid = validate_simplicial(cosk.levels, cosk.faces, cosk.degeneracies)
    result: Dict[str, Any] = {
        "simplicial": simplicial.name,
        "m": args.m,
        "coskeleton": cosk.as_dict(),
        "skeleton_sizes": list(sk.sizes),
        "valid": valid.as_dict(),
    }
    ok = valid.ok
    if args.against:
        other = workspace.get(args.against, "simplicial")
        adjunction = adjunction_check(simplicial, other, args.m, budget)
        result["adjunction"] = {
            "against": other.name,
            "counts": adjunction.value,
            **adjunction.as_dict(),
        }
        ok = ok and adjunction.ok
    return Outcome(ok, result, {"sizes": list(cosk.sizes)})


def simplicial_hypercheck(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> Outcome:
    """Decide if a (possibly thinned) Cech nerve is a hypercovering."""
    cover = workspace.get(args.cover, "cover")
    nerve = cech_nerve(cover, args.trunc, budget)
    if args.keep:
        top = nerve.levels[-1]
        keep = [top.vertex(name.strip()) for name in args.keep.split(",") if name.strip()]
        nerve = nerve.restrict_top(keep)
    valid = validate_simplicial_graph(nerve)
    verdict = is_hypercovering(nerve)
    return Outcome(
        valid.ok,
        {
            "nerve": nerve.as_dict(),
            "valid": valid.as_dict(),
            "hypercovering": verdict.ok,
            "verdict": verdict.as_dict(),
        },
        {"hypercovering": verdict.ok},
    )


def simplicial_nerve_check(
    args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig
) -> Outcome:
    """Compare pi1 of the components of the Cech nerve with G_R."""
    cover = workspace.get(args.cover, "cover")
    base = _vertex(cover.base, args.base)
    report = nerve_quotient_check(cover, base, None, budget)
    return Outcome(
        report.ok,
        report.as_dict(),
        {"quotient_order": len(report.quotient.group), "agree": report.ok},
    )


def show_config(args: Namespace, workspace: Workspace, budget: GaloisBudgetConfig) -> Outcome:
    """Report the effective configuration."""
    from lcgalois.settings import config  # noqa

    if not args.quiet:
        config.show_config()
    result = {
        "base": config.items(),
        "logging": config.logging.items(),
        "operations": config.operations.items(),
        "sentry": config.sentry.masked_items(),
    }
    result["budget"] = {
        **budget.items(),
        **{f"effective_{k}": budget.limit(k) for k in budget.LIMITS},
    }
    return Outcome(True, result, {"production": config.is_production()})
