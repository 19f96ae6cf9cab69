"""Test the populators."""

from unittest import TestCase

import pytest

from lcgalois.config.budget import GaloisBudgetConfig
from lcgalois.core.groups import FiniteGroup
from lcgalois.cover.covers import validate_cover
from lcgalois.exceptions import MissingParam
from lcgalois.orbifold.actions import validate_action

from .populators import BasePopulator


class TestPopulators(BasePopulator, TestCase):
    """Test the populators."""

    def test_get_budget(self):
        """Test that a budget is required, from an argument or the instance."""
        with pytest.raises(MissingParam):
            self._get_budget()

        budget = GaloisBudgetConfig("BUDGET", {})
        self.assertIs(self._get_budget(budget), budget)
        self.budget = budget
        self.assertIs(self._get_budget(), budget)

    def test_create_group(self):
        """Test creating groups from family names."""
        self.assertEqual(self.create_group("symmetric", 3).order, 6)
        self.assertEqual(self.create_group("quaternion").order, 8)
        self.assertEqual(self.create_group("trivial").order, 1)
        with pytest.raises(MissingParam):
            self.create_group("nosuchfamily")

    def test_create_gset(self):
        """Test creating G-sets of every kind."""
        group = self.create_group("cyclic", 4)
        self.assertEqual(len(self.create_gset(group).carrier), 4)
        self.assertEqual(len(self.create_gset(group, "trivial", points=3).carrier), 3)
        self.assertEqual(len(self.create_gset(FiniteGroup.symmetric(3), "natural").carrier), 3)
        with pytest.raises(MissingParam):
            self.create_gset(group, "nosuchkind")

    def test_create_graph(self):
        """Test creating graphs from family names."""
        self.assertEqual(len(self.create_graph("theta", 3).vertices), 2)
        with pytest.raises(MissingParam):
            self.create_graph("nosuchfamily")

    def test_create_cover(self):
        """Test that created covers and actions are valid."""
        cover = self.create_cover()
        self.assertTrue(validate_cover(cover).ok)
        self.assertEqual(cover.degree(), 2)
        self.assertTrue(validate_action(self.create_reflection()).ok)
        self.assertTrue(validate_action(self.create_rotation()).ok)

    def test_libraries(self):
        """Test the fixture libraries and their bounds."""
        groups = self.create_group_library(16)
        self.assertLessEqual(max(len(g) for g in groups), 16)
        self.assertListEqual([len(g) for g in groups], sorted(len(g) for g in groups))
        self.assertLess(len(self.create_group_library(4)), len(groups))

        graphs = self.create_graph_library(6)
        self.assertTrue(all(len(g.edges()) <= 6 for g in graphs))
        self.assertTrue(all(g.is_connected() for g in graphs))

        for action in self.create_action_library():
            self.assertTrue(validate_action(action).ok, msg=action.name)
            self.assertLessEqual(len(action.group), 4)
