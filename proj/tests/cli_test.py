"""End-to-end tests of the folijet command line: exit codes, error paths,
determinism and the realize round trip.

Usage: cli_test.py <path to folijet binary>
"""
import json
import os
import subprocess
import sys
import tempfile
import unittest

FOLIJET = None
HERE = os.path.dirname(os.path.abspath(__file__))
EXAMPLES = os.path.join(os.path.dirname(HERE), "examples_cli")


def run(*args):
    proc = subprocess.run([FOLIJET, *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def example(name):
    return os.path.join(EXAMPLES, name)


def write_json(doc):
    fd, path = tempfile.mkstemp(suffix=".json")
    with os.fdopen(fd, "w") as f:
        json.dump(doc, f)
    return path


def cplx(pair):
    return complex(pair[0], pair[1])


class NormalForm(unittest.TestCase):
    def test_minimal_configuration(self):
        code, out, _ = run("normal-form", "--input", example("minimal.json"), "--k0", "1")
        self.assertEqual(code, 0)
        doc = json.loads(out)
        res = doc["result"]
        self.assertEqual(res["order"], 1)
        a1, b1 = res["a_n"][0], res["b_n"][0]
        self.assertEqual(a1["poly"], [[1.0, 0.0]])
        self.assertTrue(all(cplx(c) == 0 for t in a1["poles"] for c in t["coeffs"]))
        z1 = 1.0
        at_q = [t for t in b1["poles"] if cplx(t["pole"]) == 1.0]
        self.assertEqual(len(at_q), 1)
        self.assertAlmostEqual(abs(cplx(at_q[0]["coeffs"][0]) + z1 / 2), 0.0, places=15)

    def test_envelope(self):
        code, out, _ = run("normal-form", "--input", example("minimal.json"), "--tol-rel", "1e-7")
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["tool"], "folijet")
        self.assertEqual(doc["command"], "normal-form")
        self.assertEqual(len(doc["config_hash"]), 16)
        self.assertEqual(doc["tolerances"]["rel"], 1e-7)

    def test_k0_override_changes_hash(self):
        _, a, _ = run("tangency", "--input", example("minimal.json"))
        _, b, _ = run("tangency", "--input", example("minimal.json"), "--k0", "2")
        a, b = json.loads(a), json.loads(b)
        self.assertEqual(a["result"]["order"], 3)
        self.assertEqual(b["result"]["order"], 2)
        self.assertNotEqual(a["config_hash"], b["config_hash"])


class Errors(unittest.TestCase):
    def test_malformed_json(self):
        code, _, err = run("normal-form", "--input", example("malformed.json"))
        self.assertEqual(code, 2)
        self.assertIn("input error at /", err)

    def test_schema_violation_names_path(self):
        code, _, err = run("normal-form", "--input", example("bad_lambda.json"))
        self.assertEqual(code, 2)
        self.assertIn("input error at /singular/0/lambda", err)

    def test_missing_file(self):
        code, _, _ = run("normal-form", "--input", example("does_not_exist.json"))
        self.assertEqual(code, 2)

    def test_bad_format_option(self):
        code, _, _ = run("tangency", "--input", example("minimal.json"), "--format", "xml")
        self.assertEqual(code, 2)

    def test_coincident_points_are_degenerate(self):
        with open(example("minimal.json")) as f:
            doc = json.load(f)
        doc["points"]["q"] = [[0.0, 0.0]]
        path = write_json(doc)
        try:
            code, _, err = run("normal-form", "--input", path)
        finally:
            os.unlink(path)
        self.assertEqual(code, 3, err)


class Determinism(unittest.TestCase):
    def test_byte_identical_reruns(self):
        for cmd in ("normal-form", "tangency", "check", "realize"):
            for fmt in ("json", "csv"):
                with tempfile.TemporaryDirectory() as d:
                    outs = []
                    for i in range(2):
                        path = os.path.join(d, "out%d" % i)
                        code, _, err = run(cmd, "--input", example("generic.json"), "--format", fmt, "--out", path)
                        self.assertEqual(code, 0, err)
                        with open(path, "rb") as f:
                            outs.append(f.read())
                    self.assertEqual(outs[0], outs[1], "%s %s" % (cmd, fmt))
                    self.assertGreater(len(outs[0]), 0)


class Check(unittest.TestCase):
    def test_forced_zero_factor(self):
        code, out, _ = run("check", "--input", example("forced_zero.json"))
        self.assertEqual(code, 0)
        cert = json.loads(out)["result"]
        self.assertFalse(cert["verdict"])
        self.assertEqual(cert["offending"], "(1-2*lambda_1)")

    def test_generic_passes(self):
        code, out, _ = run("check", "--input", example("generic.json"))
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["result"]["verdict"])


class Realize(unittest.TestCase):
    def load(self, name):
        with open(example(name)) as f:
            return json.load(f)

    def test_round_trip_through_curve(self):
        src = self.load("generic.json")
        code, out, err = run("tangency", "--input", example("generic.json"))
        self.assertEqual(code, 0, err)
        curve = json.loads(out)["result"]
        doc = json.loads(json.dumps(src))
        for s in doc["singular"]:
            del s["s"]
        for t in doc["tangency"]:
            del t["z"]
        doc["curve"] = curve
        path = write_json(doc)
        try:
            code, out, err = run("realize", "--input", path)
        finally:
            os.unlink(path)
        self.assertEqual(code, 0, err)
        res = json.loads(out)
        self.assertEqual(res["curve_source"], "input")
        self.assertLess(res["result"]["residual"], 1e-8)
        for i, s in enumerate(src["singular"]):
            for k, c in enumerate(s["s"]):
                self.assertLess(abs(cplx(res["result"]["s"][i][k]) - cplx(c)), 1e-8)
        for j, t in enumerate(src["tangency"]):
            for k, c in enumerate(t["z"]):
                self.assertLess(abs(cplx(res["result"]["z"][j][k]) - cplx(c)), 1e-8)

    def test_forward_curve(self):
        code, out, err = run("realize", "--input", example("minimal.json"))
        self.assertEqual(code, 0, err)
        res = json.loads(out)
        self.assertEqual(res["curve_source"], "forward")
        self.assertLess(res["result"]["residual"], 1e-8)
        self.assertLess(res["result"]["round_trip_error"], 1e-8)

    def test_zero_curve_is_non_generic(self):
        doc = self.load("minimal.json")
        doc["curve"] = {"p": [{"coeffs": [[0, 0]] * 3}], "q": [{"coeffs": [[0, 0]] * 3}]}
        path = write_json(doc)
        try:
            code, _, err = run("realize", "--input", path)
        finally:
            os.unlink(path)
        self.assertEqual(code, 4, err)

    def test_failed_certificate_is_degenerate(self):
        doc = self.load("forced_zero.json")
        path = write_json(doc)
        try:
            code, _, err = run("realize", "--input", path)
        finally:
            os.unlink(path)
        self.assertEqual(code, 3, err)
        self.assertIn("(1-2*lambda_1)", err)


class Verify(unittest.TestCase):
    def test_config_checks(self):
        code, out, err = run("verify", "--input", example("generic.json"), "--seed", "1")
        doc = json.loads(out)
        self.assertEqual(code, 0 if doc["all_pass"] else 5, err)
        self.assertEqual(len(doc["criteria"]), 10)
        self.assertTrue(doc["config_checks"])
        for c in doc["config_checks"]:
            self.assertTrue(c["pass"], c)

    def test_fixed_seed_is_stable(self):
        a = run("verify", "--seed", "1")
        b = run("verify", "--seed", "1")
        self.assertEqual(a[0], b[0])
        self.assertEqual(a[1], b[1])


if __name__ == "__main__":
    FOLIJET = sys.argv.pop(1)
    unittest.main(verbosity=2)
