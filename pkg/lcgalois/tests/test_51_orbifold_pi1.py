"""Test module: orbifold fundamental groups and their exact sequence."""

import pytest

from lcgalois.cover.graphs import Graph
from lcgalois.exceptions import BudgetExceeded, InvalidParam, NotConnected
from lcgalois.fpgroup.abelian import abelianization
from lcgalois.fpgroup.words import Word
from lcgalois.orbifold.actions import GraphAction
from lcgalois.orbifold.pi1 import (
    arrow_name,
    check_labelling,
    labelling_witnesses,
    orbifold_pi1,
    quotient_exact_sequence,
)

from .base import GaloisTestCase


class OrbifoldPi1TestCase(GaloisTestCase):
    """Define the test suite for presentations of orbifold fundamental groups."""

    def test_reflection(self):
        """Test that an edge with its ends swapped has fundamental group Z/2."""
        data = orbifold_pi1(self.create_reflection())
        self.assertEqual(arrow_name(0, 1), "a0_1")
        self.assertTupleEqual(data.presentation.generators, ("a0_1", "a1_1"))
        self.assertListEqual(
            [str(r) for r in data.presentation.relators],
            ["a0_1 a1_1", "a1_1 a0_1", "a0_1 a1_1^-1"],
        )
        self.assertDictEqual(data.labels, {"a0_1": 1, "a1_1": 1})
        self.assertEqual(str(abelianization(data.presentation)), "Z/2")
        self.assertValid(check_labelling(data))
        self.assertTupleEqual(data.killed, ())
        self.assertEqual(data.as_dict()["labels"], {"a0_1": "1", "a1_1": "1"})

        witnesses = labelling_witnesses(data)
        self.assertEqual(str(witnesses[0]), "1")
        self.assertEqual(str(witnesses[1]), "a0_1")

    def test_trivial_group(self):
        """Test that the trivial group gives the fundamental group of the graph."""
        data = orbifold_pi1(GraphAction.trivial(self.create_graph("theta")))
        self.assertTupleEqual(data.presentation.generators, ("x2", "x4"))
        self.assertTupleEqual(data.presentation.relators, ())
        images = {g: str(w) for g, w in data.x_images.items()}
        self.assertDictEqual(images, {"x2": "x2", "x4": "x4"})

    def test_free_action(self):
        """Test that a free rotation gives the fundamental group of the quotient."""
        data = orbifold_pi1(self.create_rotation(3))
        self.assertEqual(str(abelianization(data.presentation)), "Z")
        self.assertValid(check_labelling(data))
        self.assertEqual(len(labelling_witnesses(data)), 3)

    def test_label(self):
        """Test that letters multiply on the left."""
        data = orbifold_pi1(self.create_reflection())
        self.assertEqual(data.label(Word.parse("a0_1")), 1)
        self.assertEqual(data.label(Word.parse("a0_1 a1_1^-1")), 0)
        self.assertEqual(data.label(Word()), 0)

    def test_disconnected(self):
        """Test that the graph must be connected."""
        union = Graph.disjoint_union([Graph.cycle(1), Graph.cycle(1)])
        with pytest.raises(NotConnected):
            orbifold_pi1(GraphAction.trivial(union))


class QuotientExactSequenceTestCase(GaloisTestCase):
    """Define the test suite for the exact sequence of a graph action."""

    def test_reflection(self):
        """Test E1, E2 and E3 for the reflected edge."""
        report = quotient_exact_sequence(
            self.create_reflection(), degree_cap=2, budget=self.budget
        )
        self.assertTrue(report.ok)
        self.assertTupleEqual(report.degrees, (1, 2))
        self.assertTupleEqual(report.covers, ((1, 1), (2, 1)))
        self.assertTupleEqual(report.actions, ((1, 1), (2, 1)))
        self.assertTrue(report.monodromy_matches)

        summary = report.as_dict()
        self.assertTrue(summary["E1"]["ok"])
        self.assertTrue(summary["E2"]["ok"])
        self.assertTrue(summary["E3"]["ok"])
        self.assertDictEqual(
            summary["E3"]["degrees"][1],
            {
                "degree": 2,
                "covers": 2,
                "connected_covers": 1,
                "actions": 2,
                "transitive_actions": 1,
            },
        )

    def test_rotation(self):
        """Test the exact sequence of a free action."""
        report = quotient_exact_sequence(
            self.create_rotation(3), degree_cap=2, budget=self.budget
        )
        self.assertTrue(report.ok)
        self.assertTupleEqual(report.actions, ((1, 1), (2, 1)))

    def test_cap(self):
        """Test the degree cap and its budget."""
        report = quotient_exact_sequence(
            self.create_reflection(), budget=self.budget_with(DEGREE_CAP=1)
        )
        self.assertTupleEqual(report.degrees, (1,))
        with pytest.raises(InvalidParam):
            quotient_exact_sequence(self.create_reflection(), degree_cap=0, budget=self.budget)
        with pytest.raises(BudgetExceeded):
            quotient_exact_sequence(self.create_reflection(), degree_cap=4, budget=self.budget)
