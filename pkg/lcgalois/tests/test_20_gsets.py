"""Test module: finite G-sets, equivariant maps and the Galois criterion."""

import pytest

from lcgalois.core.groupoids import connected_components
from lcgalois.core.groups import FiniteGroup, GroupHomomorphism
from lcgalois.exceptions import (
    GroupMismatch,
    InvalidParam,
    InvariantViolation,
    NotConnected,
    PointNotInCarrier,
)
from lcgalois.gset.gsets import (
    EquivariantMap,
    GSet,
    aut_group,
    count_automorphisms,
    count_endomorphisms,
    equivariant_maps,
    find_equivariant_isomorphism,
    is_connected,
    is_galois,
    normality_crosscheck,
    orbits,
    require_connected,
    stabilizer,
    stabilizer_elements,
    validate_gset,
)

from .base import GaloisTestCase


class GSetTestCase(GaloisTestCase):
    """Define the test suite for G-sets."""

    def setUp(self):
        """Create the groups used throughout."""
        super().setUp()
        self.z2 = self.create_group("cyclic", 2)
        self.z3 = self.create_group("cyclic", 3)
        self.s3 = self.create_group("symmetric", 3)

    def test_validate_gset(self):
        """Test the diagnostics of the action axioms."""
        self.assertValid(validate_gset(self.z2, ["a", "b"], [[0, 1], [1, 0]]))
        self.assertInvalid(validate_gset(self.z2, ["a", "b"], [[0, 1], [1, 5]]), "outside")
        self.assertInvalid(
            validate_gset(self.z2, ["a", "b"], [[1, 0], [1, 0]]), "identity moves a"
        )
        self.assertInvalid(
            validate_gset(self.z2, ["a", "b"], [[0, 1], [0, 0]]), "1 does not act bijectively"
        )
        verdict = validate_gset(self.z3, ["a", "b", "c"], [[0, 1, 2], [1, 0, 2], [1, 0, 2]])
        self.assertInvalid(verdict, "action not compatible at (1,1,a)")
        self.assertEqual(verdict.witness["point"], "a")

        with pytest.raises(InvariantViolation):
            GSet(self.z2, ["a", "b"], [[1, 0], [1, 0]])

    def test_points(self):
        """Test points, permutations and the action."""
        natural = self.create_gset(self.s3, "natural")
        self.assertTupleEqual(natural.carrier, ("1", "2", "3"))
        self.assertEqual(natural.point("2"), 1)
        with pytest.raises(PointNotInCarrier):
            natural.point("4")
        with pytest.raises(PointNotInCarrier):
            natural.check_point(3)
        with pytest.raises(InvalidParam):
            natural.check_point(-1)

        cycle = self.s3.index("(1 2 3)")
        self.assertEqual(natural.apply(cycle, 0), 1)
        self.assertTupleEqual(natural.permutation(cycle), (1, 2, 0))

        with pytest.raises(InvalidParam):
            GSet.natural(self.z3)

    def test_constructions(self):
        """Test the named constructions."""
        regular = self.create_gset(self.z3)
        self.assertEqual(regular.name, "Z/3")
        self.assertTupleEqual(regular.carrier, ("0", "1", "2"))

        trivial = self.create_gset(self.z3, "trivial", points=2)
        self.assertEqual(trivial.name, "1")
        self.assertTupleEqual(trivial.carrier, ("0", "1"))

        cosets = self.create_gset(self.s3, "cosets", subgroup=(0, 3, 4))
        self.assertTupleEqual(cosets.carrier, ("()H", "(2 3)H"))

        union = GSet.disjoint_union(regular, trivial)
        self.assertEqual(len(union), 5)
        self.assertEqual(union.carrier[0], "0:0")
        self.assertEqual(union.carrier[3], "1:0")
        self.assertEqual(len(orbits(union)), 3)

        product = GSet.product(regular, regular)
        self.assertEqual(len(product), 9)
        self.assertEqual(product.carrier[1], "(0,1)")
        self.assertEqual(len(orbits(product)), 3)

        with pytest.raises(GroupMismatch):
            GSet.disjoint_union(regular, self.create_gset(self.z2))
        with pytest.raises(GroupMismatch):
            GSet.product(regular, self.create_gset(self.z2))

        permuted = GSet.from_permutations(self.z2, [(0, 1, 2), (1, 0, 2)])
        self.assertTupleEqual(permuted.carrier, ("0", "1", "2"))
        self.assertListEqual(orbits(permuted), [(0, 1), (2,)])

    def test_pullback(self):
        """Test pulling an action back along a homomorphism."""
        z4 = self.create_group("cyclic", 4)
        mod2 = GroupHomomorphism(z4, self.z2, (0, 1, 0, 1))
        pulled = self.create_gset(self.z2).pullback(mod2)
        self.assertEqual(pulled.group, z4)
        self.assertEqual(pulled.apply(3, 0), 1)
        self.assertEqual(pulled.apply(2, 0), 0)
        with pytest.raises(GroupMismatch):
            self.create_gset(self.z3).pullback(mod2)

    def test_action_groupoid(self):
        """Test the translation groupoid of a G-set."""
        groupoid = self.create_gset(self.z2).action_groupoid()
        self.assertEqual(len(groupoid.objects), 2)
        self.assertEqual(len(groupoid.morphisms), 4)
        self.assertListEqual(connected_components(groupoid), [(0, 1)])
        group, _ = groupoid.vertex_group(0)
        self.assertEqual(group.order, 1)

        groupoid = self.create_gset(self.z2, "trivial", points=2).action_groupoid()
        self.assertListEqual(connected_components(groupoid), [(0,), (1,)])
        self.assertEqual(groupoid.vertex_group(1)[0].order, 2)

    def test_orbits_and_stabilizers(self):
        """Test orbits, connectedness and stabilizers."""
        natural = self.create_gset(self.s3, "natural")
        self.assertListEqual(orbits(natural), [(0, 1, 2)])
        self.assertTrue(is_connected(natural))
        require_connected(natural)

        trivial = self.create_gset(self.z2, "trivial", points=2)
        self.assertListEqual(orbits(trivial), [(0,), (1,)])
        self.assertFalse(is_connected(trivial))
        with pytest.raises(NotConnected):
            require_connected(trivial)

        self.assertTupleEqual(stabilizer_elements(natural, 0), (0, 1))
        group, inclusion = stabilizer(natural, 0)
        self.assertEqual(group.name, "Stab(1)")
        self.assertEqual(group.order, 2)
        self.assertTupleEqual(inclusion.images, (0, 1))
        self.assertValid(inclusion.validate())
        with pytest.raises(PointNotInCarrier):
            stabilizer(natural, 7)

    def test_equivariant_maps(self):
        """Test validation and enumeration of equivariant maps."""
        regular = self.create_gset(self.z2)
        point = self.create_gset(self.z2, "trivial")

        collapse = EquivariantMap(regular, point, (0, 0))
        self.assertValid(collapse.validate())
        self.assertTupleEqual(collapse.fiber(0), (0, 1))
        self.assertFalse(collapse.is_bijective())
        self.assertEqual(collapse(1), 0)

        self.assertInvalid(EquivariantMap(regular, regular, (0, 0)).validate(), "(1,0)")
        self.assertInvalid(EquivariantMap(regular, regular, (0, 5)).validate(), "not a function")
        other = self.create_gset(self.z3)
        self.assertInvalid(EquivariantMap(regular, other, (0, 0)).validate(), "different groups")

        swap = EquivariantMap(regular, regular, (1, 0))
        self.assertValid(swap.validate())
        self.assertTrue(swap.is_bijective())
        self.assertTupleEqual(swap.then(swap).mapping, (0, 1))
        self.assertTupleEqual(swap.then(collapse).mapping, (0, 0))

        z3 = self.create_gset(self.z3)
        self.assertListEqual(equivariant_maps(z3, z3), [(0, 1, 2), (1, 2, 0), (2, 0, 1)])
        self.assertEqual(len(equivariant_maps(z3, z3, bijective=True)), 3)
        point = self.create_gset(self.z3, "trivial")
        self.assertListEqual(equivariant_maps(z3, point), [(0, 0, 0)])
        self.assertListEqual(equivariant_maps(self.create_gset(self.z3, "trivial"), z3), [])
        with pytest.raises(GroupMismatch):
            equivariant_maps(z3, regular)

    def test_isomorphisms(self):
        """Test finding equivariant isomorphisms."""
        natural = self.create_gset(self.s3, "natural")
        cosets = self.create_gset(self.s3, "cosets", subgroup=(0, self.s3.index("(1 2)")))
        mapping = find_equivariant_isomorphism(cosets, natural)
        self.assertIsNotNone(mapping)
        self.assertValid(EquivariantMap(cosets, natural, mapping).validate())

        halves = self.create_gset(self.s3, "cosets", subgroup=(0, 3, 4))
        self.assertIsNone(find_equivariant_isomorphism(natural, halves))

    def test_counting(self):
        """Test counting automorphisms and endomorphisms."""
        trivial = self.create_gset(self.z2, "trivial", points=3)
        self.assertEqual(count_automorphisms(trivial), 6)
        self.assertEqual(count_endomorphisms(trivial), 27)

        regular = self.create_gset(self.z3)
        self.assertEqual(count_automorphisms(regular), 3)
        self.assertEqual(count_endomorphisms(regular), 3)

        mixed = GSet.disjoint_union(regular, self.create_gset(self.z3, "trivial", points=2))
        self.assertEqual(count_automorphisms(mixed), 6)
        self.assertEqual(count_automorphisms(mixed), len(equivariant_maps(mixed, mixed, True)))

    def test_aut_group(self):
        """Test the automorphism group of a G-set."""
        group, automorphisms = aut_group(self.create_gset(self.z3))
        self.assertEqual(group.order, 3)
        self.assertEqual(group.name, "Aut(Z/3)")
        self.assertEqual(group.elements[0], "()")
        self.assertTupleEqual(automorphisms[0], (0, 1, 2))

        group, _ = aut_group(self.create_gset(self.s3, "natural"))
        self.assertTrue(group.is_trivial())

    def test_is_galois(self):
        """Test the Galois criterion against normality of stabilizers."""
        regular = is_galois(self.create_gset(self.s3))
        self.assertValid(regular)
        self.assertDictEqual(regular.witness, {"domain": 36, "image": 36, "codomain": 36})
        self.assertValid(is_galois(self.create_gset(self.s3, "cosets", subgroup=(0, 3, 4))))

        natural = is_galois(self.create_gset(self.s3, "natural"))
        self.assertInvalid(natural, "is not onto")
        self.assertDictEqual(natural.witness, {"domain": 3, "image": 3, "codomain": 9})

        disconnected = is_galois(self.create_gset(self.z2, "trivial", points=2))
        self.assertInvalid(disconnected, "not connected")
        self.assertDictEqual(disconnected.witness, {"orbits": 2})

    def test_normality_crosscheck(self):
        """Test that the three criteria agree on connected G-sets."""
        self.assertDictEqual(
            normality_crosscheck(self.create_gset(self.s3)),
            {"galois": True, "normal": True, "aut_order_is_size": True},
        )
        self.assertDictEqual(
            normality_crosscheck(self.create_gset(self.s3, "natural")),
            {"galois": False, "normal": False, "aut_order_is_size": False},
        )
        q8 = self.create_group("quaternion")
        for subgroup in q8.subgroups():
            checks = normality_crosscheck(self.create_gset(q8, "cosets", subgroup=subgroup))
            self.assertTrue(all(checks.values()))
