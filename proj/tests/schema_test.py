"""Validates the shipped JSON schemas against the example inputs and the
outputs of every folijet command.

Usage: schema_test.py <path to folijet binary>
"""
import json
import os
import subprocess
import sys
import unittest

import jsonschema

FOLIJET = None
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
EXAMPLES = os.path.join(ROOT, "examples_cli")
INVALID = {"malformed.json", "bad_lambda.json"}


def schema(name):
    with open(os.path.join(ROOT, "docs", name)) as f:
        s = json.load(f)
    jsonschema.Draft7Validator.check_schema(s)
    return s


class Inputs(unittest.TestCase):
    def test_valid_examples(self):
        s = schema("input.schema.json")
        for name in sorted(os.listdir(EXAMPLES)):
            if name in INVALID or not name.endswith(".json"):
                continue
            with self.subTest(name=name):
                with open(os.path.join(EXAMPLES, name)) as f:
                    jsonschema.validate(json.load(f), s)

    def test_invalid_example_is_rejected(self):
        s = schema("input.schema.json")
        with open(os.path.join(EXAMPLES, "bad_lambda.json")) as f:
            doc = json.load(f)
        with self.assertRaises(jsonschema.ValidationError):
            jsonschema.validate(doc, s)


class Outputs(unittest.TestCase):
    def test_command_outputs(self):
        s = schema("output.schema.json")
        for cmd in ("normal-form", "tangency", "check", "realize"):
            for name in ("minimal.json", "generic.json", "forced_zero.json"):
                proc = subprocess.run([FOLIJET, cmd, "--input", os.path.join(EXAMPLES, name)],
                                      capture_output=True, text=True)
                if proc.returncode != 0:
                    continue
                with self.subTest(cmd=cmd, name=name):
                    jsonschema.validate(json.loads(proc.stdout), s)

    def test_verify_output(self):
        s = schema("output.schema.json")
        proc = subprocess.run([FOLIJET, "verify", "--input", os.path.join(EXAMPLES, "minimal.json"), "--seed", "2"],
                              capture_output=True, text=True)
        jsonschema.validate(json.loads(proc.stdout), s)


if __name__ == "__main__":
    FOLIJET = sys.argv.pop(1)
    unittest.main(verbosity=2)
