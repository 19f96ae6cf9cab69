"""Test module: sections of the text format."""

from unittest import TestCase

import pytest

from lcgalois.cli.textformat import Section, read_sections, split_list
from lcgalois.exceptions import ParseError

GROUP_TEXT = """\
[group] name=Z2; elements=e,a   # the group of order two
table=e,a
      a,e
"""


class ReadSectionsTestCase(TestCase):
    """Define the test suite for splitting a text into sections."""

    def test_fields_and_positions(self):
        """Test header fields, continuation lines and field locations."""
        (section,) = read_sections(GROUP_TEXT, "z2.txt")
        self.assertEqual(section.kind, "group")
        self.assertEqual(section.name, "Z2")
        self.assertEqual(section.source, "z2.txt")
        self.assertEqual(section.line, 1)
        self.assertEqual(section.positions["name"], (1, 14))
        self.assertEqual(section.positions["elements"], (1, 27))
        self.assertEqual(section.positions["table"], (2, 7))
        self.assertListEqual(section.names("elements"), ["e", "a"])
        self.assertListEqual(section.rows("table"), ["e,a", "a,e"])

    def test_several_sections(self):
        """Test that every header opens a new section and comments are dropped."""
        text = "# a workspace\n[graph] name=L; family=cycle; n=1\n\n[simplicial] name=S\nn=2\n"
        sections = read_sections(text)
        self.assertListEqual([s.kind for s in sections], ["graph", "simplicial"])
        self.assertListEqual([s.line for s in sections], [2, 4])
        self.assertEqual(sections[1].fields["n"], "2")

    def test_errors(self):
        """Test the located parse errors."""
        with pytest.raises(ParseError) as excinfo:
            read_sections("name=x\n", "f.txt")
        self.assertEqual(excinfo.value.message, "content outside a section")
        self.assertEqual((excinfo.value.line, excinfo.value.column), (1, 1))
        self.assertEqual(str(excinfo.value), "f.txt:1:1: content outside a section")

        with pytest.raises(ParseError) as excinfo:
            read_sections("\n[bogus] name=x\n")
        self.assertEqual(excinfo.value.message, "unknown section [bogus]")
        self.assertEqual(excinfo.value.line, 2)

        with pytest.raises(ParseError) as excinfo:
            read_sections("[group] name=a; name=b")
        self.assertEqual(excinfo.value.message, "duplicate field name")
        self.assertEqual(excinfo.value.column, 16)

        with pytest.raises(ParseError) as excinfo:
            read_sections("[group] junk")
        self.assertEqual(excinfo.value.message, "expected key=value, got 'junk'")
        self.assertEqual(excinfo.value.column, 8)

    def test_split_list(self):
        """Test that blanks are dropped."""
        self.assertListEqual(split_list(" a, b,,c , "), ["a", "b", "c"])


class SectionTestCase(TestCase):
    """Define the test suite for reading section fields."""

    def setUp(self):
        """Set up a section with a few fields."""
        (self.section,) = read_sections("[gset] name=X; n=x; map=a:x, b:y; blank= ", "x.txt")

    def test_require(self):
        """Test required and optional fields."""
        self.assertEqual(self.section.require("map"), "a:x, b:y")
        self.assertFalse(self.section.has("blank"))
        self.assertEqual(self.section.optional("blank", "none"), "none")
        with pytest.raises(ParseError) as excinfo:
            self.section.require("carrier")
        self.assertEqual(excinfo.value.message, "[gset] needs carrier=")
        self.assertEqual(excinfo.value.column, 1)

    def test_integer(self):
        """Test integer fields and their defaults."""
        self.assertEqual(self.section.integer("points", 3), 3)
        with pytest.raises(ParseError) as excinfo:
            self.section.integer("n")
        self.assertEqual(excinfo.value.message, "n must be an integer, got 'x'")
        self.assertEqual(excinfo.value.column, self.section.positions["n"][1])
        with pytest.raises(ParseError):
            self.section.integer("points")

    def test_pairs(self):
        """Test x:y maps over named points."""
        self.assertDictEqual(
            self.section.pairs("map", ["a", "b"], ["x", "y"], ("point", "point")), {0: 0, 1: 1}
        )
        with pytest.raises(ParseError) as excinfo:
            self.section.pairs("map", ["a"], ["x", "y"], ("point", "point"))
        self.assertEqual(excinfo.value.message, "unknown point 'b' in map")

        section = Section("eqmap", "", 1, {"map": "a:x, a"}, {"map": (1, 5)})
        with pytest.raises(ParseError, match="expected x:y in map"):
            section.pairs("map", ["a"], ["x"], ("point", "point"))
        section.fields["map"] = "a:x, a:x"
        with pytest.raises(ParseError, match="a is mapped twice"):
            section.pairs("map", ["a"], ["x"], ("point", "point"))

    def test_cycles(self):
        """Test cycle notation over named points."""
        names = ["y0", "y1", "y2"]
        self.assertTupleEqual(self.section.cycles("act", "(y0 y1)", names), (1, 0, 2))
        self.assertTupleEqual(self.section.cycles("act", "(y0 y1 y2)", names), (1, 2, 0))
        self.assertTupleEqual(self.section.cycles("act", "", names), (0, 1, 2))
        with pytest.raises(ParseError, match="not cycle notation"):
            self.section.cycles("act", "y0 y1", names)
        with pytest.raises(ParseError, match="unknown point 'y5'"):
            self.section.cycles("act", "(y0 y5)", names)
        with pytest.raises(ParseError, match="appears twice"):
            self.section.cycles("act", "(y0 y1)(y1 y2)", names)
