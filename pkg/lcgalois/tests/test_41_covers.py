"""Test module: covering maps, monodromy and deck transformations."""

import pytest

from lcgalois.cover.covers import (
    CoveringMap,
    cover_from_action,
    cover_from_component_actions,
    deck_group,
    fiber_product,
    find_cover_isomorphism,
    identity_cover,
    is_galois_cover,
    is_trivialized_by,
    lift_path,
    monodromy,
    path_monodromy,
    require_cover,
    trivial_cover,
    validate_cover,
)
from lcgalois.cover.graphs import Graph
from lcgalois.exceptions import BaseMismatch, InvalidCover, InvalidParam, NotConnected
from lcgalois.fpgroup.actions import FiniteAction

from .base import GaloisTestCase


class CoverTestCase(GaloisTestCase):
    """Define the test suite for building and checking covers."""

    def test_double_cover(self):
        """Test the connected double cover of a loop."""
        cover = self.create_cover()
        self.assertValid(validate_cover(cover))
        self.assertEqual(cover.degree(), 2)
        self.assertTupleEqual(cover.fiber(0), (0, 1))
        self.assertTupleEqual(cover.total.vertices, ("(v0,1)", "(v0,2)"))
        self.assertEqual(cover.total.name, "C1~2")
        self.assertTrue(cover.total.is_connected())
        self.assertDictEqual(
            cover.as_dict()["vmap"], {"(v0,1)": "v0", "(v0,2)": "v0"}
        )

    def test_trivial_and_identity(self):
        """Test the split covers."""
        graph = self.create_graph("theta")
        self.assertValid(validate_cover(identity_cover(graph)))
        split = trivial_cover(graph, 2)
        self.assertValid(validate_cover(split))
        self.assertEqual(split.degree(1), 2)
        self.assertEqual(len(split.total.components()), 2)

    def test_broken(self):
        """Test the covering map diagnostics on a double cover of a loop by a 2-cycle."""
        base, total = Graph.cycle(1), Graph.cycle(2)
        self.assertValid(validate_cover(CoveringMap(total, base, (0, 0), (0, 1, 0, 1))))
        cases = [
            ((0,), (0, 1, 0, 1), "wrong length"),
            ((0, 0), (0, 1, 0, 5), "leaves the base graph"),
            ((0, 0), (0, 0, 0, 1), "does not commute with the involution"),
            ((0, 0), (0, 1, 1, 0), "star of v0 is not mapped bijectively"),
        ]
        for vertex_map, dart_map, fragment in cases:
            cover = CoveringMap(total, base, vertex_map, dart_map)
            self.assertInvalid(validate_cover(cover), fragment)
            with pytest.raises(InvalidCover):
                require_cover(cover)

    def test_from_action(self):
        """Test that monodromy recovers the action a cover was built from."""
        theta = self.create_graph("theta")
        cover = self.create_cover(theta, 3, {"x2": "(1 2)", "x4": "(2 3)"})
        self.assertValid(validate_cover(cover))
        self.assertEqual(cover.degree(1), 3)
        action = monodromy(cover)
        self.assertTupleEqual(action.generators, ("x2", "x4"))
        self.assertTupleEqual(action.images, ((1, 0, 2), (0, 2, 1)))

        with pytest.raises(InvalidParam):
            cover_from_action(theta, 0, FiniteAction(("y",), 2, ((1, 0),)))
        with pytest.raises(InvalidParam):
            cover_from_action(theta, 0, FiniteAction(("x2", "x4"), 0, ((), ())))

    def test_from_component_actions(self):
        """Test a cover of a disconnected graph given by one action per component."""
        graph = Graph.disjoint_union([Graph.cycle(1), Graph.cycle(1)])
        swap = FiniteAction(("x0",), 2, ((1, 0),))
        fixed = FiniteAction(("x2",), 2, ((0, 1),))
        cover = cover_from_component_actions(graph, {0: swap, 1: fixed})
        self.assertValid(validate_cover(cover))
        self.assertEqual(cover.degree(1), 2)
        self.assertListEqual(cover.total.components(), [(0, 1), (2,), (3,)])
        self.assertTupleEqual(monodromy(cover, 0).images, ((1, 0),))

        with pytest.raises(InvalidParam):
            cover_from_component_actions(graph, {0: swap})
        with pytest.raises(InvalidParam):
            cover_from_component_actions(graph, {0: swap, 1: FiniteAction(("x2",), 1, ((0,),))})
        with pytest.raises(InvalidParam):
            cover_from_component_actions(graph, {0: swap, 1: swap})

    def test_lift_path(self):
        """Test lifting a path sheet by sheet."""
        cover = self.create_cover(degree=3)
        lifted, end = lift_path(cover, [0, 0], 0)
        self.assertEqual(len(lifted), 2)
        self.assertEqual(end, 2)
        self.assertTupleEqual(path_monodromy(cover, [0], 0), (1, 2, 0))
        self.assertTupleEqual(path_monodromy(cover, [1], 0), (2, 0, 1))

        path = self.create_cover(Graph.path(3), 2, {})
        with pytest.raises(InvalidParam):
            lift_path(path, [2], 0)


class DeckTestCase(GaloisTestCase):
    """Define the test suite for deck groups and isomorphisms of covers."""

    def test_galois(self):
        """Test that covers of a loop are Galois."""
        for degree in (2, 3):
            deck = deck_group(self.create_cover(degree=degree))
            self.assertEqual(len(deck.group), degree)
            self.assertTrue(deck.galois)
            self.assertEqual(deck.as_dict()["degree"], degree)
        self.assertValid(is_galois_cover(self.create_cover()))

    def test_not_galois(self):
        """Test a cover of the theta graph with monodromy S3."""
        cover = self.create_cover(self.create_graph("theta"), 3, {"x2": "(1 2)", "x4": "(2 3)"})
        deck = deck_group(cover)
        self.assertEqual(len(deck.group), 1)
        self.assertFalse(deck.galois)
        self.assertInvalid(is_galois_cover(cover), "deck group of order 1 on a fiber of size 3")

    def test_disconnected(self):
        """Test that deck groups need a connected total graph."""
        with pytest.raises(NotConnected):
            deck_group(trivial_cover(Graph.cycle(1), 2))

    def test_isomorphisms(self):
        """Test that covers are isomorphic when their monodromies are conjugate."""
        graph = Graph.cycle(1)
        three = self.create_cover(graph, 3, {"x0": "(1 2 3)"})
        inverse = self.create_cover(graph, 3, {"x0": "(1 3 2)"})
        swap = self.create_cover(graph, 3, {"x0": "(1 2)"})
        self.assertIsNotNone(find_cover_isomorphism(three, inverse))
        self.assertIsNone(find_cover_isomorphism(three, swap))
        self.assertIsNone(find_cover_isomorphism(three, self.create_cover(graph, 2)))
        with pytest.raises(BaseMismatch):
            find_cover_isomorphism(three, self.create_cover(self.create_graph("theta"), 3))


class TrivializedByTestCase(GaloisTestCase):
    """Define the test suite for pullbacks of covers."""

    def test_fiber_product(self):
        """Test the pullback of a double cover along itself."""
        cover = self.create_cover()
        pullback = fiber_product(cover, cover)
        self.assertValid(validate_cover(pullback))
        self.assertEqual(len(pullback.total.vertices), 4)
        self.assertEqual(pullback.degree(0), 2)
        with pytest.raises(BaseMismatch):
            fiber_product(cover, identity_cover(Graph.theta(3)))

    def test_trivialized(self):
        """Test that a Galois cover trivializes itself and split covers are always trivial."""
        cover = self.create_cover()
        self.assertValid(is_trivialized_by(cover, cover))
        self.assertValid(is_trivialized_by(trivial_cover(Graph.cycle(1), 2), cover))
        self.assertValid(is_trivialized_by(cover, self.create_cover(degree=4)))

    def test_not_trivialized(self):
        """Test that both criteria report a cover that does not split."""
        cover = self.create_cover()
        verdict = is_trivialized_by(cover, identity_cover(Graph.cycle(1)))
        self.assertInvalid(verdict, "vertices over a component of 1")
        self.assertInvalid(verdict, "loop x0 at v0 acts as (1 2)")
        self.assertInvalid(is_trivialized_by(cover, self.create_cover(degree=3)))
