"""Test module: the command line from arguments to report."""

import io
import json
import os
import tempfile
from typing import Any, Dict, Tuple
from unittest import TestCase
from unittest.mock import patch

import pytest

from lcgalois.cli.main import main

WORKSPACE = """\
[group] name=S3; family=symmetric; n=3
[group] name=Z2; family=cyclic; n=2
[gset] name=R; group=S3; family=regular
[gset] name=N; group=S3; family=natural
[graph] name=Theta; family=theta; n=3
[graph] name=L; family=cycle; n=1
[graph] name=E; family=path; n=2
[cover] name=U; base=L; degree=2; monodromy=x0: (1 2)
[presentation] name=P; gens=a; rels=a a
[action] name=flip; group=Z2; graph=E; act=1: (v0 v1)
[simplicial] name=S; family=circle; n=2
"""


class MainTestCase(TestCase):
    """Define the test suite for running operations end to end."""

    def setUp(self):
        """Write the workspace to a temporary file."""
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.directory = directory.name
        self.path = self.write("workspace.txt", WORKSPACE)

    def write(self, name: str, text: str) -> str:
        """Write an input file and return its path."""
        path = os.path.join(self.directory, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        return path

    def run_cli(self, *argv: str, inputs: Tuple[str, ...] = ()) -> Tuple[int, Dict[str, Any]]:
        """Run the command line quietly and return the exit code and the report."""
        output = os.path.join(self.directory, "report.json")
        flags = [flag for path in inputs or (self.path,) for flag in ("-i", path)]
        code = main([*argv, *flags, "--output", output, "--quiet"])
        with open(output, encoding="utf-8") as handle:
            return code, json.load(handle)

    def test_gset_galois(self):
        """Test that the answer is in the payload and the exit code reports consistency."""
        code, report = self.run_cli("gset", "galois", "--gset", "R")
        self.assertEqual(code, 0)
        self.assertEqual(report["command"], "gset galois")
        self.assertTrue(report["result"]["galois"])
        self.assertEqual(report["result"]["automorphisms"], 6)
        self.assertListEqual(report["inputs"]["files"], [self.path])

        code, report = self.run_cli("gset", "galois", "--gset", "N")
        self.assertEqual(code, 0)
        self.assertFalse(report["result"]["galois"])

    def test_cover_pi1(self):
        """Test the rank of pi1 of the theta graph."""
        code, report = self.run_cli("cover", "pi1", "--graph", "Theta")
        self.assertEqual(code, 0)
        self.assertEqual(report["result"]["rank"], 2)
        self.assertEqual(report["result"]["expected_rank"], 2)

    def test_fp(self):
        """Test abelianization and the budget refusal of a large degree."""
        code, report = self.run_cli("fp", "abel", "--presentation", "P")
        self.assertEqual(code, 0)
        self.assertEqual(report["result"]["group"], "Z/2")

        code, report = self.run_cli("fp", "actions", "--presentation", "P", "--degree", "7")
        self.assertEqual(code, 1)
        self.assertFalse(report["ok"])
        self.assertEqual(report["error"]["type"], "BudgetExceeded")
        self.assertEqual(report["error"]["requested"], 7)
        self.assertEqual(report["error"]["limit"], 6)

    def test_orbifold_exact_seq(self):
        """Test the exact sequence of a reflection with a degree cap flag."""
        code, report = self.run_cli(
            "orbifold", "exact-seq", "--action", "flip", "--degree-cap", "2"
        )
        self.assertEqual(code, 0)
        self.assertTrue(report["ok"])
        self.assertEqual(report["budget"]["limits"]["DEGREE_CAP"], 2)
        self.assertEqual(report["arguments"]["degree_cap"], 2)

    def test_simplicial(self):
        """Test the edge-path group and the nerve check."""
        code, report = self.run_cli("simplicial", "pi1", "--simplicial", "S")
        self.assertEqual(code, 0)
        self.assertEqual(report["result"]["abelianization"], "Z")

        for spelling in ("prop53", "nerve-check"):
            code, report = self.run_cli("simplicial", spelling, "--cover", "U")
            self.assertEqual(code, 0)
            self.assertEqual(report["command"], "simplicial prop53")
            self.assertListEqual(report["result"]["components"], [1, 2, 4])

    def test_invalid_entity(self):
        """Test that a failed validation exits with 1."""
        bad = self.write("bad.txt", "[group] name=Bad; elements=e,a\ntable=e,e; a,a\n")
        code, report = self.run_cli("core", "validate", inputs=(self.path, bad))
        self.assertEqual(code, 1)
        self.assertListEqual(report["result"]["invalid"], ["Bad"])
        self.assertEqual(len(report["inputs"]["files"]), 2)

        code, report = self.run_cli("core", "quotients", "--group", "Bad", inputs=(bad,))
        self.assertEqual(code, 1)
        self.assertEqual(report["error"]["type"], "InvariantViolation")

    def test_parse_errors(self):
        """Test that malformed input exits with 2 and a location."""
        broken = self.write("broken.txt", "[graph] name=L; family=cycle; n=1\n[bogus] x=1\n")
        code, report = self.run_cli("cover", "pi1", "--graph", "L", inputs=(broken,))
        self.assertEqual(code, 2)
        self.assertEqual(report["error"]["type"], "ParseError")
        self.assertEqual(report["error"]["line"], 2)
        self.assertEqual(report["error"]["source"], broken)

        dangling = self.write("dangling.txt", "[gset] name=X; group=G; family=regular\n")
        code, report = self.run_cli("gset", "orbits", "--gset", "X", inputs=(dangling,))
        self.assertEqual(code, 2)
        self.assertIn("no group named 'G'", report["error"]["message"])

        missing = os.path.join(self.directory, "missing.txt")
        code, report = self.run_cli("gset", "orbits", "--gset", "X", inputs=(missing,))
        self.assertEqual(code, 2)

    def test_unknown_command(self):
        """Test that bad command lines exit with 2 and still report."""
        for argv in (["nope"], ["gset", "galois"], ["fp", "abel", "--degree-cap", "0"]):
            with patch("sys.stdout", new_callable=io.StringIO) as stdout:
                code = main(argv)
            self.assertEqual(code, 2, msg=argv)
            report = json.loads(stdout.getvalue())
            self.assertEqual(report["command"], "lcgalois")
            self.assertEqual(report["error"]["type"], "UnknownCommand")
            self.assertListEqual(report["arguments"]["argv"], argv)

    def test_version(self):
        """Test the version flag."""
        with patch("sys.stdout", new_callable=io.StringIO) as stdout:
            with pytest.raises(SystemExit) as excinfo:
                main(["--version"])
        self.assertEqual(excinfo.value.code, 0)
        self.assertTrue(stdout.getvalue().startswith("lcgalois "))

    def test_deterministic(self):
        """Test that the same run gives the same bytes."""
        output = os.path.join(self.directory, "report.json")
        texts = []
        for _ in range(2):
            argv = ["cover", "monodromy", "--cover", "U", "-i", self.path, "--quiet"]
            main([*argv, "--output", output])
            with open(output, encoding="utf-8") as handle:
                texts.append(handle.read())
        self.assertEqual(texts[0], texts[1])
        self.assertTrue(texts[0].endswith("\n"))

    def test_stdout(self):
        """Test that the report goes to stdout without --output."""
        with patch("sys.stdout", new_callable=io.StringIO) as stdout:
            code = main(["fp", "abel", "--presentation", "P", "-i", self.path, "--quiet"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(stdout.getvalue())["command"], "fp abel")

    def test_config(self):
        """Test the configuration report."""
        code, report = self.run_cli("config", "--spectrum-degree", "3", inputs=(self.path,))
        self.assertEqual(code, 0)
        budget = report["result"]["budget"]
        self.assertEqual(budget["effective_SPECTRUM_DEGREE"], 3)
        self.assertIn("effective_MAX_DEGREE", budget)
        sentry = report["result"]["sentry"]
        dsns = [value for key, value in sentry.items() if key.endswith("_DSN")]
        self.assertTrue(all(value in ("", None, "<set>") for value in dsns))
