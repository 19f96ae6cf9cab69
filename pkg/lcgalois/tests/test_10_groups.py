"""Test module: finite groups and homomorphisms."""

import pytest

from lcgalois.core.groups import (
    FiniteGroup,
    GroupHomomorphism,
    find_isomorphism,
    homomorphisms,
    subgroup_group,
    validate_group,
)
from lcgalois.exceptions import InvalidParam, InvariantViolation
from lcgalois.fpgroup.abelian import abelianization

from .base import GaloisTestCase


class GroupTestCase(GaloisTestCase):
    """Define the test suite for finite groups."""

    def test_validate_group(self):
        """Test the diagnostics of the group axioms."""
        self.assertValid(validate_group(["e", "a"], [[0, 1], [1, 0]]))
        self.assertInvalid(validate_group([], []), "at least one element")
        self.assertInvalid(validate_group(["a", "a"], [[0, 1], [1, 0]]), "not unique")
        self.assertInvalid(validate_group(["e", "a"], [[0, 1]]), "table has shape")
        self.assertInvalid(validate_group(["e", "a"], [[0, 1], [1, 2]]), "outside the element")
        self.assertInvalid(validate_group(["e", "a"], [[1, 0], [0, 1]]), "identity not neutral")
        self.assertInvalid(validate_group(["e", "a"], [[0, 1], [1, 1]]), "missing inverse for a")

        verdict = validate_group(["e", "a", "b"], [[0, 1, 2], [1, 0, 0], [2, 0, 0]])
        self.assertInvalid(verdict, "non-associative")
        self.assertIn("triple", verdict.witness)

    def test_constructor_checks(self):
        """Test that a broken table is refused unless checking is off."""
        with pytest.raises(InvariantViolation):
            FiniteGroup(["e", "a"], [[0, 1], [1, 1]])
        group = FiniteGroup(["e", "a"], [[0, 1], [1, 1]], check=False)
        self.assertEqual(group.order, 2)

    def test_families(self):
        """Test the named families."""
        z4 = FiniteGroup.cyclic(4)
        self.assertTupleEqual(z4.elements, ("0", "1", "2", "3"))
        self.assertEqual(z4.name, "Z/4")
        self.assertEqual(z4.mul(3, 2), 1)
        self.assertEqual(z4.inv(1), 3)
        self.assertEqual(z4.power(1, -2), 2)
        self.assertTrue(z4.is_abelian())
        with pytest.raises(InvalidParam):
            FiniteGroup.cyclic(0)

        d3 = FiniteGroup.dihedral(3)
        self.assertTupleEqual(d3.elements, ("e", "r", "r^2", "s", "rs", "r^2s"))
        self.assertEqual(d3.name, "D3")
        self.assertFalse(d3.is_abelian())

        s3 = FiniteGroup.symmetric(3)
        self.assertEqual(s3.order, 6)
        self.assertEqual(s3.name, "S3")
        self.assertEqual(s3.elements[0], "()")
        self.assertEqual(len(s3.permutations), 6)

        self.assertEqual(FiniteGroup.alternating(4).order, 12)
        self.assertEqual(FiniteGroup.alternating(4).name, "A4")

        q8 = FiniteGroup.quaternion()
        self.assertEqual(q8.order, 8)
        self.assertEqual(q8.elements[0], "1")
        i = q8.index("i")
        self.assertEqual(q8.elements[q8.mul(i, i)], "-1")
        self.assertEqual(q8.element_order(i), 4)

        product = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(3))
        self.assertEqual(product.name, "Z/2xZ/3")
        self.assertEqual(product.elements[0], "(0,0)")
        self.assertEqual(product.order, 6)

        trivial = FiniteGroup.trivial()
        self.assertTupleEqual(trivial.elements, ("e",))
        self.assertTrue(trivial.is_trivial())

    def test_index(self):
        """Test looking up elements by name."""
        group = FiniteGroup.dihedral(4)
        self.assertEqual(group.identity, 0)
        self.assertEqual(group.index("s"), 4)
        with pytest.raises(InvalidParam):
            group.index("t")

    def test_equality(self):
        """Test that equality ignores names but not tables."""
        left = FiniteGroup.cyclic(3)
        right = FiniteGroup.cyclic(3)
        right.name = "C3"
        self.assertEqual(left, right)
        self.assertEqual(hash(left), hash(right))
        self.assertNotEqual(left, FiniteGroup.cyclic(4))

    def test_subgroups(self):
        """Test subgroup enumeration, normality and cosets."""
        s3 = FiniteGroup.symmetric(3)
        subgroups = s3.subgroups()
        self.assertEqual(len(subgroups), 6)
        self.assertEqual(subgroups[0], (0,))
        self.assertEqual(subgroups[-1], tuple(range(6)))

        a3 = tuple(sorted(s3.generated_subgroup([s3.index("(1 2 3)")])))
        self.assertEqual(a3, (0, 3, 4))
        self.assertTrue(s3.is_normal(a3))
        transposition = (0, s3.index("(1 2)"))
        self.assertTrue(s3.is_subgroup(transposition))
        self.assertFalse(s3.is_normal(transposition))
        self.assertFalse(s3.is_subgroup((1, 2)))
        self.assertEqual(s3.core(transposition), (0,))
        self.assertEqual(s3.normal_closure(transposition), tuple(range(6)))
        self.assertEqual(len(s3.left_cosets(transposition)), 3)
        self.assertEqual(s3.index_of(transposition), 3)

    def test_quotient(self):
        """Test quotients by normal subgroups."""
        s3 = FiniteGroup.symmetric(3)
        quotient, projection = s3.quotient((0, 3, 4))
        self.assertEqual(quotient.order, 2)
        self.assertTupleEqual(quotient.elements, ("[()]", "[(2 3)]"))
        self.assertTupleEqual(projection, (0, 1, 1, 0, 0, 1))
        self.assertValid(GroupHomomorphism(s3, quotient, projection).validate())

        same, identity = FiniteGroup.cyclic(3).quotient((0,))
        self.assertTupleEqual(same.elements, ("0", "1", "2"))
        self.assertTupleEqual(identity, (0, 1, 2))

        with pytest.raises(InvalidParam):
            s3.quotient((0, s3.index("(1 2)")))

    def test_generators_and_words(self):
        """Test generating sets and shortest words."""
        z6 = FiniteGroup.cyclic(6)
        self.assertTupleEqual(z6.generating_set(), (1,))
        self.assertDictEqual(
            FiniteGroup.cyclic(4).words([1]), {0: (), 1: (0,), 2: (0, 0), 3: (0, 0, 0)}
        )
        s3 = FiniteGroup.symmetric(3)
        self.assertEqual(len(s3.generated_subgroup(s3.generating_set())), 6)

    def test_presentation(self):
        """Test that the Cayley presentation abelianizes correctly."""
        presentation = FiniteGroup.cyclic(3).presentation()
        self.assertTupleEqual(presentation.generators, ("g0",))
        self.assertEqual(str(abelianization(presentation)), "Z/3")
        self.assertEqual(str(abelianization(FiniteGroup.symmetric(3).presentation())), "Z/2")

    def test_homomorphisms(self):
        """Test homomorphism validation, kernels and images."""
        z4, z2 = FiniteGroup.cyclic(4), FiniteGroup.cyclic(2)
        mod2 = GroupHomomorphism(z4, z2, (0, 1, 0, 1))
        self.assertValid(mod2.validate())
        self.assertEqual(mod2.validate().value, mod2)
        self.assertTupleEqual(mod2.kernel(), (0, 2))
        self.assertTupleEqual(mod2.image(), (0, 1))
        self.assertTrue(mod2.is_surjective())
        self.assertFalse(mod2.is_injective())
        self.assertEqual(mod2(3), 1)

        self.assertInvalid(GroupHomomorphism(z4, z2, (0, 1, 1, 1)).validate(), "not preserved")
        self.assertInvalid(GroupHomomorphism(z4, z2, (0, 1)).validate(), "does not cover")
        self.assertInvalid(GroupHomomorphism(z4, z2, (0, 1, 0, 5)).validate(), "outside")

        identity = GroupHomomorphism.identity(z4)
        self.assertEqual(identity.then(mod2), mod2)

        s3 = FiniteGroup.symmetric(3)
        inclusion = GroupHomomorphism.inclusion(s3, (0, 3, 4))
        self.assertEqual(inclusion.source.order, 3)
        self.assertTrue(inclusion.is_injective())
        self.assertValid(inclusion.validate())

    def test_subgroup_group(self):
        """Test turning a subgroup into a group of its own."""
        s3 = FiniteGroup.symmetric(3)
        a3 = subgroup_group(s3, (0, 3, 4), name="A3")
        self.assertTupleEqual(a3.elements, ("()", "(1 2 3)", "(1 3 2)"))
        self.assertEqual(len(a3.permutations), 3)
        self.assertTrue(a3.is_abelian())
        with pytest.raises(InvalidParam):
            subgroup_group(s3, (0, 3))

    def test_enumerating_homomorphisms(self):
        """Test enumerating homomorphisms and finding isomorphisms."""
        self.assertEqual(len(homomorphisms(FiniteGroup.cyclic(4), FiniteGroup.cyclic(2))), 2)
        self.assertEqual(len(homomorphisms(FiniteGroup.cyclic(2), FiniteGroup.symmetric(3))), 4)
        for hom in homomorphisms(FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)):
            self.assertValid(hom.validate())

        z6 = FiniteGroup.cyclic(6)
        product = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(3))
        iso = find_isomorphism(z6, product)
        self.assertIsNotNone(iso)
        self.assertTrue(iso.is_injective())
        self.assertIsNone(find_isomorphism(z6, FiniteGroup.symmetric(3)))
        self.assertIsNone(find_isomorphism(z6, FiniteGroup.cyclic(4)))
        self.assertIsNotNone(find_isomorphism(FiniteGroup.dihedral(3), FiniteGroup.symmetric(3)))
