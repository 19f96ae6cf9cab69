"""Test module: trivialization quotients and the inverse system of finite quotients of pi1."""

from unittest.mock import patch

import pytest

from lcgalois.core.chains import validate_chain
from lcgalois.cover.covers import trivial_cover
from lcgalois.cover.graphs import Graph
from lcgalois.cover.trivialization import (
    factors_through,
    joint_image,
    monodromy_stabilizer,
    pi1_inverse_system,
    trivialization_quotient,
)
from lcgalois.exceptions import BudgetExceeded, InvalidParam, InvariantViolation, NotConnected
from lcgalois.fpgroup.actions import FiniteAction
from lcgalois.typing import Verdict

from .base import GaloisTestCase


def _loop_action(*perm: int) -> FiniteAction:
    """Return an action of the free group on x0."""
    return FiniteAction(("x0",), len(perm), (tuple(perm),))


class JointImageTestCase(GaloisTestCase):
    """Define the test suite for joint monodromy images."""

    def test_single(self):
        """Test the image of one action."""
        image = joint_image([_loop_action(1, 0)], budget=self.budget)
        self.assertEqual(len(image.group), 2)
        self.assertTupleEqual(image.perms, ((0, 1), (1, 0)))
        self.assertTupleEqual(image.generators, (1,))
        self.assertTupleEqual(monodromy_stabilizer(image, 0), (0,))

    def test_side_by_side(self):
        """Test that the joint image of Z/2 and Z/3 quotients is Z/6."""
        image = joint_image([_loop_action(1, 0), _loop_action(1, 2, 0)], budget=self.budget)
        self.assertEqual(len(image.group), 6)
        self.assertTrue(image.group.is_abelian())

    def test_refusals(self):
        """Test mismatched actions and the IMAGE_ORDER budget."""
        with pytest.raises(InvalidParam):
            joint_image([], budget=self.budget)
        with pytest.raises(InvalidParam):
            joint_image(
                [_loop_action(1, 0), FiniteAction(("y",), 2, ((1, 0),))], budget=self.budget
            )
        with pytest.raises(BudgetExceeded):
            joint_image([_loop_action(1, 2, 0)], budget=self.budget_with(IMAGE_ORDER=2))

    def test_factors_through(self):
        """Test kernel containment between actions."""
        swap, point = _loop_action(1, 0), _loop_action(0)
        self.assertTrue(factors_through(point, swap))
        self.assertFalse(factors_through(swap, point))
        self.assertTrue(factors_through(swap, _loop_action(1, 2, 3, 0)))
        self.assertFalse(factors_through(_loop_action(1, 2, 0), swap))


class TrivializationQuotientTestCase(GaloisTestCase):
    """Define the test suite for trivialization quotients."""

    def test_galois(self):
        """Test that a Galois cover gives its monodromy group."""
        quotient = trivialization_quotient(self.create_cover(), budget=self.budget)
        self.assertEqual(len(quotient.group), 2)
        self.assertEqual(len(quotient.monodromy_group), 2)
        self.assertEqual(len(quotient.stabilizer), 1)
        self.assertEqual(len(quotient.kernel), 1)
        self.assertValid(quotient.quotient_map.validate())
        self.assertTupleEqual(quotient.regular_action().images, ((1, 0),))

        summary = quotient.as_dict()
        self.assertTrue(summary["galois"])
        self.assertEqual(summary["monodromy_order"], 2)
        self.assertEqual(summary["stabilizer_order"], 1)
        self.assertListEqual(list(summary["projection"]), ["x0"])

    def test_not_galois(self):
        """Test that a point stabilizer with full normal closure kills the quotient."""
        cover = self.create_cover(self.create_graph("theta"), 3, {"x2": "(1 2)", "x4": "(2 3)"})
        quotient = trivialization_quotient(cover, budget=self.budget)
        self.assertEqual(len(quotient.monodromy_group), 6)
        self.assertEqual(len(quotient.stabilizer), 2)
        self.assertEqual(len(quotient.group), 1)
        self.assertFalse(quotient.as_dict()["galois"])
        self.assertTupleEqual(quotient.projection, (0, 0))

    def test_disconnected(self):
        """Test that the cover must be connected."""
        with pytest.raises(NotConnected):
            trivialization_quotient(trivial_cover(Graph.cycle(1), 2), budget=self.budget)


class InverseSystemTestCase(GaloisTestCase):
    """Define the test suite for the inverse system of finite quotients of pi1."""

    def test_loop(self):
        """Test the quotients of Z seen by covers of degree at most 3."""
        system = pi1_inverse_system(Graph.cycle(1), 0, 3, self.budget)
        self.assertValid(validate_chain(system.chain))
        self.assertEqual(len(system.chain), 3)
        self.assertEqual(len(system.factors), 3)
        summary = system.as_dict()
        self.assertEqual(summary["rank"], 1)
        self.assertListEqual([level["order"] for level in summary["levels"]], [1, 2, 6])
        self.assertTrue(all(level["abelian"] for level in summary["levels"]))

    def test_theta(self):
        """Test that degree two covers of the theta graph see Z/2 x Z/2."""
        system = pi1_inverse_system(self.create_graph("theta"), 0, 2, self.budget)
        self.assertValid(validate_chain(system.chain))
        orders = [level["order"] for level in system.as_dict()["levels"]]
        self.assertListEqual(orders, [1, 4])

    def test_refusals(self):
        """Test the depth and budget checks."""
        with pytest.raises(InvalidParam):
            pi1_inverse_system(Graph.cycle(1), 0, 0, self.budget)
        with pytest.raises(BudgetExceeded):
            pi1_inverse_system(Graph.cycle(1), 0, 7, self.budget)

    def test_broken_chain(self):
        """Test that a chain failing validation is refused."""
        broken = Verdict(False, ("projection 0 is not a homomorphism",))
        with patch("lcgalois.cover.trivialization.validate_chain", return_value=broken):
            with pytest.raises(InvariantViolation) as excinfo:
                pi1_inverse_system(Graph.cycle(1), 0, 2, self.budget)
        self.assertListEqual(excinfo.value.diagnostics, ["projection 0 is not a homomorphism"])
