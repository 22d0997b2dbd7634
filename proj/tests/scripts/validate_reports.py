# Copyright 2026 The HalluCite Authors
# SPDX-License-Identifier: Apache-2.0

"""Runs the checker on fixture papers and validates every report against the schema."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def run(cmd):
    return subprocess.run(cmd, capture_output=True, text=True)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--checker", required=True)
    parser.add_argument("--fixtures", required=True)
    parser.add_argument("--schema", required=True)
    args = parser.parse_args()

    schema = json.loads(pathlib.Path(args.schema).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        made = run([args.fixtures, str(tmp)])
        if made.returncode != 0:
            print(made.stderr)
            return 1
        db = str(tmp / "db")
        lock = str(tmp / "db.lock")
        if run([args.checker, "lock", "--db", db, "--out", lock]).returncode != 0:
            print("lock failed")
            return 1

        cases = [
            ("clean", [], 0),
            ("dirty", [], 1),
            ("dirty", ["--lockfile", lock], 1),
            ("clean", ["--profile", "--threshold", "85"], 0),
        ]
        for n, (paper, extra, expected) in enumerate(cases):
            out = tmp / f"out{n}"
            result = run([args.checker, "-i", str(tmp / f"{paper}.pdf"), "--db", db, "-o", str(out)] + extra)
            if result.returncode != expected:
                print(f"case {n}: exit {result.returncode}, expected {expected}\n{result.stderr}")
                failures += 1
                continue
            report = json.loads((out / f"{paper}.report.json").read_text())
            errors = list(validator.iter_errors(report))
            for error in errors:
                print(f"case {n}: {'/'.join(map(str, error.path))}: {error.message}")
            failures += bool(errors)

            only = run([args.checker, "-i", str(tmp / f"{paper}.pdf"), "--db", db, "--json-only"] + extra)
            errors = list(validator.iter_errors(json.loads(only.stdout)))
            failures += bool(errors)

        if failures == 0:
            bad = json.loads((tmp / "out1" / "dirty.report.json").read_text())
            bad["counts"]["flagged"] = -1
            if validator.is_valid(bad):
                print("schema accepted a negative count")
                failures += 1

    print("schema validation:", "ok" if failures == 0 else f"{failures} failure(s)")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
