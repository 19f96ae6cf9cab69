"""Test module: finite groups acting on graphs."""

import pytest

from lcgalois.cover.graphs import Graph
from lcgalois.exceptions import InvalidParam, InvariantViolation
from lcgalois.gset.gsets import is_connected
from lcgalois.orbifold.actions import (
    GraphAction,
    is_free,
    orbit_representatives,
    quotient_graph,
    require_action,
    validate_action,
)

from .base import GaloisTestCase


class GraphActionTestCase(GaloisTestCase):
    """Define the test suite for graph actions."""

    def test_reflection(self):
        """Test Z/2 swapping the ends of an edge."""
        flip = self.create_reflection()
        self.assertValid(validate_action(flip))
        self.assertFalse(is_free(flip))
        self.assertListEqual(orbit_representatives(flip), [0])
        self.assertDictEqual(
            flip.as_dict(),
            {
                "group": "Z/2",
                "graph": "P2",
                "act": {
                    "0": {"vertices": "()", "darts": "()"},
                    "1": {"vertices": "(1 2)", "darts": "(1 2)"},
                },
                "free": False,
            },
        )
        with pytest.raises(InvalidParam):
            quotient_graph(flip)

    def test_rotation(self):
        """Test Z/3 rotating a triangle, and its quotient graph."""
        rotation = self.create_rotation(3)
        self.assertValid(validate_action(rotation))
        self.assertTrue(is_free(rotation))
        self.assertTupleEqual(rotation.vertices[2], (2, 0, 1))
        self.assertTrue(is_connected(rotation.vertex_gset()))

        quotient = quotient_graph(rotation)
        self.assertEqual(quotient.name, "C3/Z/3")
        self.assertTupleEqual(quotient.vertices, ("{v0,v1,v2}",))
        self.assertEqual(quotient.num_edges, 1)
        self.assertEqual(quotient.euler_characteristic(), 0)

    def test_trivial(self):
        """Test the trivial group acting on a graph."""
        action = GraphAction.trivial(self.create_graph("theta"))
        self.assertValid(validate_action(action))
        self.assertTrue(is_free(action))
        quotient = quotient_graph(action)
        self.assertTupleEqual(quotient.vertices, ("{v0}", "{v1}"))
        self.assertEqual(quotient.num_edges, 3)

    def test_from_images(self):
        """Test the refusals of extending images to the group."""
        group, graph = self.create_group("cyclic", 2), Graph.path(2)
        with pytest.raises(InvalidParam):
            GraphAction.from_images(group, graph, {})
        with pytest.raises(InvalidParam):
            GraphAction.from_images(group, graph, {1: ((1, 1), (1, 0))})

    def test_broken(self):
        """Test the axiom named by each diagnostic."""
        group, graph = self.create_group("cyclic", 2), Graph.path(2)
        off = GraphAction(group, graph, ((0, 1), (1, 0)), ((0, 1), (0, 1)))
        self.assertInvalid(validate_action(off), "attachment: 1 moves dart e0+ off its vertex")
        with pytest.raises(InvariantViolation):
            require_action(off)

        moved = GraphAction(group, graph, ((1, 0), (1, 0)), ((1, 0), (1, 0)))
        self.assertInvalid(validate_action(moved), "identity: 0 does not act trivially")

        short = GraphAction(group, graph, ((0, 1),), ((0, 1),))
        self.assertInvalid(validate_action(short), "one image per group element")

        bad = GraphAction(group, graph, ((0, 1), (0, 0)), ((0, 1), (1, 0)))
        self.assertInvalid(validate_action(bad), "bijectivity")

        z3, triangle = self.create_group("cyclic", 3), Graph.cycle(3)
        rotation = self.create_rotation(3)
        twice = GraphAction(
            z3,
            triangle,
            (rotation.vertices[0], rotation.vertices[1], rotation.vertices[1]),
            (rotation.darts[0], rotation.darts[1], rotation.darts[1]),
        )
        self.assertInvalid(validate_action(twice), "composition: act(1) act(1) != act(2)")
