"""Test module: skeleta, coskeleta and maps of truncated simplicial sets."""

import pytest

from lcgalois.exceptions import BudgetExceeded, InvalidParam, TruncationError
from lcgalois.simplicial.sets import (
    SimplicialMap,
    TruncatedSimplicialSet,
    adjunction_check,
    boundary_families,
    coskeleton,
    simplicial_maps,
    skeleton,
    strictly_homotopic,
    validate_simplicial,
    validate_simplicial_map,
)

from .base import GaloisTestCase


class SkeletonTestCase(GaloisTestCase):
    """Define the test suite for skeleta and coskeleta."""

    def setUp(self):
        """Set up a circle and two discrete points."""
        super().setUp()
        self.circle = TruncatedSimplicialSet.circle(2)
        self.points = TruncatedSimplicialSet.discrete(["a", "b"], 2)

    def test_skeleton(self):
        """Test that the circle is its own 1-skeleton."""
        sk1 = skeleton(self.circle, 1)
        self.assertEqual(sk1.name, "Sk1(S1)")
        self.assertTupleEqual(sk1.sizes, (1, 2, 3))
        self.assertTupleEqual(sk1.levels[2], ("s000:0", "s001:01", "s011:01"))
        self.assertValid(validate_simplicial(sk1.levels, sk1.faces, sk1.degeneracies))

        sk0 = skeleton(self.circle, 0)
        self.assertTupleEqual(sk0.sizes, (1, 1, 1))
        self.assertListEqual(sk0.nondegenerate(1), [])

        with pytest.raises(TruncationError):
            skeleton(self.circle, 3)

    def test_boundary_families(self):
        """Test compatible families of vertices and of edges."""
        self.assertListEqual(
            boundary_families(["a", "b"], 2, None),
            [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
        )
        faces = {"e": ("v", "w"), "f": ("w", "w")}
        self.assertListEqual(
            boundary_families(["e", "f"], 3, lambda i, x: faces[x][i]),
            [("e", "e", "f"), ("f", "f", "f")],
        )

    def test_coskeleton(self):
        """Test that Cosk_0 of a set holds every tuple of points."""
        cosk = coskeleton(self.points, 0)
        self.assertEqual(cosk.name, "Cosk0(D)")
        self.assertTupleEqual(cosk.sizes, (2, 4, 8))
        self.assertTupleEqual(cosk.levels[1], ("(a,a)", "(a,b)", "(b,a)", "(b,b)"))
        self.assertValid(validate_simplicial(cosk.levels, cosk.faces, cosk.degeneracies))

        higher = coskeleton(TruncatedSimplicialSet.discrete(["a", "b"], 1), 0, level=2)
        self.assertTupleEqual(higher.sizes, (2, 4, 8))

        self.assertTupleEqual(coskeleton(self.circle, 0).sizes, (1, 1, 1))

    def test_coskeleton_refusals(self):
        """Test the truncation and budget refusals."""
        with pytest.raises(TruncationError):
            coskeleton(self.points, 3)
        with pytest.raises(TruncationError):
            coskeleton(self.points, 1, level=0)
        with pytest.raises(BudgetExceeded):
            coskeleton(self.points, 0, budget=self.budget_with(SIMPLICES=5))


class SimplicialMapTestCase(GaloisTestCase):
    """Define the test suite for simplicial maps."""

    def test_enumerate(self):
        """Test that degenerate simplices are forced and the rest range freely."""
        circle = TruncatedSimplicialSet.circle(1)
        point = TruncatedSimplicialSet.point(1)
        self.assertEqual(len(simplicial_maps(point, circle)), 1)

        maps = simplicial_maps(circle, circle)
        self.assertListEqual([f.levels for f in maps], [((0,), (0, 0)), ((0,), (0, 1))])
        for f in maps:
            self.assertValid(validate_simplicial_map(f))

        circle2 = TruncatedSimplicialSet.circle(2)
        self.assertEqual(len(simplicial_maps(circle2, circle2)), 2)

        with pytest.raises(TruncationError):
            simplicial_maps(circle, TruncatedSimplicialSet.circle(2))

    def test_validate_map(self):
        """Test the diagnostics of a broken map."""
        circle = TruncatedSimplicialSet.circle(1)
        self.assertInvalid(
            validate_simplicial_map(SimplicialMap(circle, circle, ((0,),))),
            "one level map per common level",
        )
        self.assertEqual(SimplicialMap(circle, circle, ((0,), (0, 1))).restrict(0), ((0,),))

    def test_adjunction(self):
        """Test that both adjunctions restrict bijectively."""
        circle = TruncatedSimplicialSet.circle(2)
        points = TruncatedSimplicialSet.discrete(["a", "b"], 2)
        for m in (0, 1):
            verdict = adjunction_check(circle, points, m)
            self.assertValid(verdict)
            self.assertDictEqual(
                verdict.value, {"skeleton_side": 2, "coskeleton_side": 2, "truncated": 2}
            )

        with pytest.raises(TruncationError):
            adjunction_check(circle, TruncatedSimplicialSet.point(1), 0)

    def test_strict_homotopy(self):
        """Test that the swap of two points is not homotopic to the identity."""
        points = TruncatedSimplicialSet.discrete(["a", "b"], 1)
        identity = SimplicialMap(points, points, ((0, 1), (0, 1)))
        swap = SimplicialMap(points, points, ((1, 0), (1, 0)))
        self.assertValid(strictly_homotopic(identity, identity))
        self.assertInvalid(strictly_homotopic(identity, swap), "no strict homotopy")

        other = TruncatedSimplicialSet.discrete(["a", "b"], 1)
        with pytest.raises(InvalidParam):
            strictly_homotopic(identity, SimplicialMap(other, points, ((0, 1), (0, 1))))

        circle = TruncatedSimplicialSet.circle(3)
        loop = SimplicialMap(circle, circle, tuple(tuple(range(k)) for k in circle.sizes))
        with pytest.raises(TruncationError):
            strictly_homotopic(loop, loop)
