"""Test module: graphs with darts and their fundamental groups."""

import pytest
from structlog.testing import capture_logs

from lcgalois.cover.graphs import Graph, induced_subgraph, validate_graph
from lcgalois.cover.pi1 import pi1_graph, spanning_tree
from lcgalois.exceptions import EmptyGraph, InvalidParam, InvariantViolation

from .base import GaloisTestCase


class GraphTestCase(GaloisTestCase):
    """Define the test suite for graphs."""

    def test_validate_graph(self):
        """Test the dart structure diagnostics."""
        self.assertValid(validate_graph(["a", "b"], [0, 1], [1, 0]))
        self.assertInvalid(validate_graph(["a", "a"], [0, 1], [1, 0]), "not unique")
        self.assertInvalid(validate_graph(["a"], [0, 0], [1]), "different lengths")
        self.assertInvalid(validate_graph(["a"], [0, 5], [1, 0]), "attached to no vertex")
        self.assertInvalid(validate_graph(["a"], [0, 0], [0, 1]), "fixed point")
        self.assertInvalid(validate_graph(["a"], [0, 0], [1, 4]), "paired with no dart")
        self.assertInvalid(
            validate_graph(["a"], [0, 0, 0], [1, 2, 0]), "not an involution at dart 0"
        )
        with pytest.raises(InvariantViolation):
            Graph(["a"], [0, 0], [0, 1])

    def test_families(self):
        """Test the named graph families."""
        theta = self.create_graph("theta", 3)
        self.assertEqual(theta.name, "Theta3")
        self.assertEqual((len(theta.vertices), theta.num_edges, theta.num_darts), (2, 3, 6))
        self.assertEqual(theta.euler_characteristic(), -1)
        self.assertListEqual(theta.adjacency().tolist(), [[0, 3], [3, 0]])

        loop = self.create_graph("cycle", 1)
        self.assertListEqual(loop.adjacency().tolist(), [[2]])
        self.assertEqual(self.create_graph("bouquet", 2).num_edges, 2)
        self.assertEqual(self.create_graph("complete", 4).num_edges, 6)
        self.assertEqual(self.create_graph("path", 3).euler_characteristic(), 1)
        with pytest.raises(InvalidParam):
            Graph.cycle(0)

    def test_darts(self):
        """Test attachment, direction and the canonical darts of edges."""
        cycle = self.create_graph("cycle", 3)
        self.assertTupleEqual(cycle.darts_at(0), (0, 5))
        self.assertEqual(cycle.source(4), 2)
        self.assertEqual(cycle.target(4), 0)
        self.assertTupleEqual(self.edges_of(cycle), (0, 2, 4))
        self.assertTupleEqual(cycle.dart_names[:2], ("e0+", "e0-"))
        self.assertEqual(cycle.vertex("v2"), 2)
        with pytest.raises(InvalidParam):
            cycle.vertex("v9")
        with pytest.raises(InvalidParam):
            cycle.check_vertex(3)

    def test_components(self):
        """Test connectivity and disjoint unions."""
        union = Graph.disjoint_union([Graph.cycle(1), Graph.path(2)])
        self.assertTupleEqual(union.vertices, ("0:v0", "1:v0", "1:v1"))
        self.assertEqual(union.name, "C1+P2")
        self.assertListEqual(union.components(), [(0,), (1, 2)])
        self.assertTupleEqual(union.component_of(2), (1, 2))
        self.assertFalse(union.is_connected())
        self.assertTrue(self.create_graph("theta").is_connected())

        empty = Graph([], [], [], name="E")
        self.assertFalse(empty.is_connected())
        with pytest.raises(EmptyGraph):
            empty.require_vertices()

    def test_equality(self):
        """Test that equality ignores names."""
        self.assertEqual(Graph.cycle(2, name="A"), Graph.cycle(2, name="B"))
        self.assertNotEqual(Graph.cycle(2), Graph.theta(2))
        self.assertEqual(hash(Graph.cycle(2, name="A")), hash(Graph.cycle(2)))

    def test_induced_subgraph(self):
        """Test keeping the darts between some vertices."""
        square = self.create_graph("cycle", 4)
        sub = induced_subgraph(square, [0, 1, 2])
        self.assertTupleEqual(sub.vertices, ("v0", "v1", "v2"))
        self.assertEqual(sub.num_edges, 2)
        self.assertTupleEqual(sub.dart_names, ("e0+", "e0-", "e1+", "e1-"))

    def test_as_dict(self):
        """Test the serializable form."""
        self.assertDictEqual(
            Graph.path(2).as_dict(),
            {"name": "P2", "vertices": ["v0", "v1"], "edges": [["e0+", "v0", "v1"]]},
        )


class Pi1TestCase(GaloisTestCase):
    """Define the test suite for fundamental groups of graphs."""

    def test_generators(self):
        """Test that the non-tree edges generate, one per independent cycle."""
        cases = [
            (self.create_graph("theta", 3), ("x2", "x4")),
            (self.create_graph("cycle", 3), ("x2",)),
            (self.create_graph("cycle", 1), ("x0",)),
            (self.create_graph("bouquet", 2), ("x0", "x2")),
            (self.create_graph("path", 3), ()),
        ]
        for graph, names in cases:
            presentation, tree = pi1_graph(graph)
            self.assertTupleEqual(tree.names, names, msg=graph.name)
            self.assertTupleEqual(presentation.generators, names)
            self.assertEqual(presentation.rank, 1 - graph.euler_characteristic())
            self.assertEqual(presentation.relators, ())

    def test_spanning_tree(self):
        """Test tree paths and generator loops."""
        tree = spanning_tree(self.create_graph("theta", 3), 0)
        self.assertTupleEqual(tree.parent, (None, 0))
        self.assertTupleEqual(tree.component, (0, 1))
        self.assertListEqual(tree.path_from_base(1), [0])
        self.assertListEqual(tree.path_to_base(1), [1])
        self.assertListEqual(tree.loop(2), [2, 1])
        self.assertTrue(tree.is_tree_dart(1))
        self.assertFalse(tree.is_tree_dart(3))
        self.assertListEqual(tree.word_of_path([2, 3, 4, 1]), [("x2", 1), ("x2", -1), ("x4", 1)])
        self.assertDictEqual(
            tree.as_dict(),
            {"base": "v0", "tree": ["e0+"], "generators": {"x2": "e1+", "x4": "e2+"}},
        )

    def test_other_base(self):
        """Test a spanning tree grown from another vertex."""
        _, tree = pi1_graph(self.create_graph("cycle", 3), 2)
        self.assertIsNone(tree.parent[2])
        self.assertEqual(len(tree.generators), 1)

    def test_disconnected(self):
        """Test that a disconnected graph is reduced to the base component."""
        union = Graph.disjoint_union([Graph.cycle(1), Graph.theta(3)])
        with capture_logs() as cap_logs:
            presentation, tree = pi1_graph(union, 0)
        self.assertEqual(presentation.rank, 1)
        self.assertTupleEqual(tree.component, (0,))
        self.assertIn("disconnected_graph", [log["event"] for log in cap_logs])

        presentation, _ = pi1_graph(union, 1)
        self.assertEqual(presentation.rank, 2)

    def test_empty(self):
        """Test that an empty graph has no fundamental group."""
        with pytest.raises(EmptyGraph):
            pi1_graph(Graph([], [], []))
