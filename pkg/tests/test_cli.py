"""
Tests for the command-line interface in main.py

Each test calls main() with an argument list and checks the exit code and
what reached standard output.
"""

import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main, parse_sequence, UsageError
from parking import format_parking_table


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue()


class TestTreesCommand(unittest.TestCase):

    def test_text_listing(self):
        self.assertEqual(run("trees", "--n", "2", "--format", "text"), (EXIT_OK, "((..).) (1,2)\n(.(..)) (2,1)\n"))

    def test_bare_leaf(self):
        self.assertEqual(run("trees", "--n", "0", "--format", "text"), (EXIT_OK, ".\n"))

    def test_count_only(self):
        self.assertEqual(run("trees", "--n", "4", "--count-only"), (EXIT_OK, "14\n"))

    def test_json_without_coordinates(self):
        code, out = run("trees", "--n", "2", "--format", "json", "--no-coords")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), [{"tree": "((..).)", "coords": None}, {"tree": "(.(..))", "coords": None}])
        self.assertLess(out.index("\"coords\""), out.index("\"tree\""))

    def test_table(self):
        code, out = run("trees", "--n", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("((..)(..))", out)
        self.assertIn("(1,4,1)", out)

    def test_bounds(self):
        self.assertEqual(run("trees", "--n", "21")[0], EXIT_USAGE)
        self.assertEqual(run("trees", "--n", "13")[0], EXIT_USAGE)
        self.assertEqual(run("trees", "--n", "-1")[0], EXIT_USAGE)


class TestTriangulateCommand(unittest.TestCase):

    def test_associahedron_bundle(self):
        code, out = run("triangulate", "--polytope", "assoc", "--n", "3")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(len(data["simplices"]), 16)
        self.assertEqual(data["meta"]["n"], 3)
        self.assertTrue(data["validation"]["overall"]["pass"])

    def test_permutohedron_bundle(self):
        code, out = run("triangulate", "--polytope", "perm", "--n", "3", "--validate")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(len(data["simplices"]), 34)
        self.assertEqual(data["validation"]["facet_pairing"]["status"], "pass")

    def test_point(self):
        data = json.loads(run("triangulate", "--polytope", "assoc", "--n", "0")[1])
        self.assertEqual(len(data["vertices"]), 1)
        self.assertEqual(data["simplices"][0]["vertices"], [0])

    def test_output_is_byte_identical(self):
        first = run("triangulate", "--polytope", "assoc", "--n", "3", "--validate", "--seed", "7")
        second = run("triangulate", "--polytope", "assoc", "--n", "3", "--validate", "--seed", "7")
        self.assertEqual(first, second)

    def test_off(self):
        code, out = run("triangulate", "--polytope", "assoc", "--n", "2", "--format", "off")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("OFF\n5 3 0\n"))

    def test_unsupported_requests(self):
        self.assertEqual(run("triangulate", "--polytope", "assoc", "--n", "7")[0], EXIT_USAGE)
        self.assertEqual(run("triangulate", "--polytope", "perm", "--n", "4")[0], EXIT_USAGE)
        self.assertEqual(run("triangulate", "--polytope", "assoc", "--n", "4", "--format", "off")[0], EXIT_USAGE)
        self.assertEqual(run("triangulate", "--polytope", "cube", "--n", "2")[0], EXIT_USAGE)


class TestVerifyCommand(unittest.TestCase):

    def test_associahedron_passes(self):
        code, out = run("verify", "--polytope", "assoc", "--n", "4", "--samples", "50", "--seed", "42")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertTrue(report["overall"]["pass"])
        self.assertEqual(report["overall"]["seed"], 42)

    def test_permutohedron_passes(self):
        code, out = run("verify", "--polytope", "perm", "--n", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["simplex_count"]["found"], 4)

    def test_needs_a_target(self):
        self.assertEqual(run("verify")[0], EXIT_USAGE)
        self.assertEqual(run("verify", "--polytope", "assoc", "--n", "2", "--samples", "-1")[0], EXIT_USAGE)

    # =========================================================================
    # STORED BUNDLES
    # =========================================================================

    def test_fresh_bundle_revalidates(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "k3.json"
            self.assertEqual(run("triangulate", "--polytope", "assoc", "--n", "3", "--out", str(path))[0], EXIT_OK)
            code, out = run("verify", "--check-file", str(path))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["bundle_format"]["status"], "pass")

    def test_corrupted_bundle_fails(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "k2.json"
            run("triangulate", "--polytope", "assoc", "--n", "2", "--out", str(path))
            data = json.loads(path.read_text(encoding="utf-8"))
            data["vertices"][1]["coords"] = [1, 3, 2]
            path.write_text(json.dumps(data), encoding="utf-8")
            code, out = run("verify", "--check-file", str(path))
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(json.loads(out)["overall"]["pass"])

    def test_mistyped_bundle_fields_fail(self):
        cases = [("assoc", lambda data: data["simplices"][0]["recipe"].update(theta=3)),
                 ("perm", lambda data: data["vertices"][0].update(perm=["1", 2, 3]))]
        for polytope, corrupt in cases:
            with self.subTest(polytope=polytope), tempfile.TemporaryDirectory() as tmp:
                path = Path(tmp) / "bundle.json"
                run("triangulate", "--polytope", polytope, "--n", "2", "--out", str(path))
                data = json.loads(path.read_text(encoding="utf-8"))
                corrupt(data)
                path.write_text(json.dumps(data), encoding="utf-8")
                code, out = run("verify", "--check-file", str(path))
                self.assertEqual(code, EXIT_FAILED)
                self.assertEqual(json.loads(out)["bundle_format"]["status"], "fail")

    def test_unreadable_bundle_fails(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "broken.json"
            path.write_text("{not json", encoding="utf-8")
            self.assertEqual(run("verify", "--check-file", str(path))[0], EXIT_FAILED)

    def test_missing_file_is_a_usage_error(self):
        self.assertEqual(run("verify", "--check-file", "/nonexistent/bundle.json")[0], EXIT_USAGE)


class TestParkingCommand(unittest.TestCase):

    def test_table(self):
        self.assertEqual(run("parking", "--n", "3"), (EXIT_OK, format_parking_table(3)))

    def test_all_lengths(self):
        code, out = run("parking", "--n", "3", "--all-lengths")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(out.splitlines()), 11)

    def test_decompose(self):
        self.assertEqual(
            run("parking", "--decompose", "3,6,1,7,2,1,3,6"),
            (EXIT_OK, "a=3 p=4 q=3 f=(1,2,1,3) g=(1,2,1) θ=VUVUUUV\n"),
        )

    def test_decompose_json(self):
        code, out = run("parking", "--decompose", "(1,2)", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"a": 1, "p": 0, "q": 1, "f": [], "g": [1], "theta": "V"})

    def test_not_a_parking_function(self):
        self.assertEqual(run("parking", "--decompose", "2,2")[0], EXIT_FAILED)

    def test_usage_errors(self):
        self.assertEqual(run("parking", "--decompose", "1,x")[0], EXIT_USAGE)
        self.assertEqual(run("parking", "--n", "9")[0], EXIT_USAGE)
        self.assertEqual(run("parking")[0], EXIT_USAGE)

    def test_parse_sequence(self):
        self.assertEqual(parse_sequence("[1, 2,3]"), (1, 2, 3))
        with self.assertRaises(UsageError):
            parse_sequence("1;2")


class TestCountsCommand(unittest.TestCase):

    def test_zp(self):
        self.assertEqual(
            run("counts", "--what", "zp", "--n-max", "8", "--format", "text"),
            (EXIT_OK, "1,1,4,34,488,10512,316224,12649104,649094752\n"),
        )

    def test_parking(self):
        self.assertEqual(run("counts", "--what", "parking", "--n-max", "3", "--format", "text"), (EXIT_OK, "1,3,16\n"))

    def test_simplices(self):
        self.assertEqual(
            run("counts", "--what", "simplices", "--n-max", "4", "--format", "text"),
            (EXIT_OK, "1,3,16,125\n"),
        )

    def test_table(self):
        code, out = run("counts", "--what", "parking", "--n-max", "30")
        self.assertEqual(code, EXIT_OK)
        self.assertNotIn("MISMATCH", out)
        self.assertIn("counts: parking", out)

    def test_bounds(self):
        self.assertEqual(run("counts", "--what", "zp", "--n-max", "31")[0], EXIT_USAGE)
        self.assertEqual(run("counts", "--what", "volume", "--n-max", "3")[0], EXIT_USAGE)


class TestGlobalOptions(unittest.TestCase):

    def test_version(self):
        code, out = run("--version")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("polytri", out)

    def test_missing_command(self):
        self.assertEqual(run()[0], EXIT_USAGE)


if __name__ == '__main__':
    unittest.main()
