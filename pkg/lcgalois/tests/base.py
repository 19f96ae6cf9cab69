"""Provide a base class for testing library behaviour."""

from typing import Any, Dict
from unittest import TestCase

from lcgalois.config.budget import GaloisBudgetConfig
from lcgalois.exceptions import MissingParam
from lcgalois.typing import Verdict

from .helpers.populators import BasePopulator


class GaloisTestCase(BasePopulator, TestCase):
    """Define the test suite for a generic structure."""

    def setUp(self):
        """Set up a default budget, isolated from the environment."""
        self.budget = GaloisBudgetConfig("BUDGET", {})
        self.attributes: Dict[str, Any] = {}

    def budget_with(self, **env: Any) -> GaloisBudgetConfig:
        """Return a budget built from GALOIS_BUDGET_* style keys."""
        return GaloisBudgetConfig(
            "BUDGET", {f"GALOIS_BUDGET_{key}": str(value) for key, value in env.items()}
        )

    def assertValid(self, verdict: Verdict) -> None:
        """Assert that a verdict holds, showing its diagnostics otherwise."""
        self.assertTrue(verdict.ok, msg="; ".join(verdict.diagnostics))

    def assertInvalid(self, verdict: Verdict, fragment: str = "") -> None:
        """Assert that a verdict fails, optionally with a diagnostic containing a fragment."""
        self.assertFalse(verdict.ok)
        self.assertTrue(verdict.diagnostics)
        if fragment:
            self.assertTrue(
                any(fragment in d for d in verdict.diagnostics),
                msg=f"{fragment!r} not in {verdict.diagnostics}",
            )

    def _test_has_identical_values(self, obj: object = None, dictionary: Dict[str, Any] = None):
        """Compare the dictionary with the same attributes of an object."""
        if not (obj and dictionary):
            raise MissingParam

        for key in dictionary.keys():
            self.assertEqual(getattr(obj, key), dictionary[key])
