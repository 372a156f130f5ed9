"""Runs every subcommand on a few inputs and validates the reports."""

import json
import pathlib
import subprocess
import sys

import jsonschema

SPEC = '{"periods": [7, 3, 5], "blocks": [[1]]}'
FAIL_SPEC = '{"periods": [14, 3, 7], "blocks": [[1]]}'
PLATEAUED = '{"periods": [7, 3, 5, 11], "blocks": [[1, 2], [3]]}'
MAJ = "x1*x2 + x1*x4 + x2*x4 + x3"
GENERATOR = json.dumps({
    "combiner": {"anf": "x1 + x2*x3"},
    "devices": [
        {"type": "lfsr", "length": 3, "taps": 3, "state": 1},
        {"type": "lfsr", "length": 2, "taps": "0x3", "state": 1},
        {"type": "nlfsr", "length": 3, "feedback": "96", "state": 1},
    ],
})

CASES = [
    ["analyze", "--tt", "8", "--n", "2"],
    ["analyze", "--anf", MAJ],
    ["analyze", "--anf", "0", "--n", "3"],
    ["bias", "--anf", "x1 + x2*x3", "--spec", SPEC],
    ["bias", "--anf", MAJ, "--spec", PLATEAUED, "--method", "walsh"],
    ["bias", "--anf", "x1 + x2 + x3*x4", "--spec", '{"periods": [3, 5, 7, 11], "blocks": [[1]]}'],
    ["oracle", "--anf", "x1 + x2*x3", "--spec", SPEC],
    ["bound", "--anf", "x1*x2*x3 + x4", "--spec", '{"periods": [3, 5, 7, 11], "blocks": [[1], [2]]}'],
    ["bound", "--anf", "x1*x2 + x3", "--spec", '{"periods": [3, 5, 7], "blocks": [[1, 2], [3]]}',
     "--approx", "x1*x2 + x3"],
    ["bound", "--anf", "x1 + x2*x3", "--spec", FAIL_SPEC],
    ["simulate", "--generator", GENERATOR, "--spec", '{"blocks": [[1]]}', "--trials", "5000", "--seed", "3"],
    ["simulate", "--generator", GENERATOR, "--spec", '{"blocks": [[1]], "multipliers": [3]}',
     "--trials", "5000", "--estimator", "random-phases"],
    ["cross-check", "--anf", MAJ, "--spec", PLATEAUED],
    ["cross-check", "--anf", "x1 + x2*x3", "--spec", FAIL_SPEC],
]


def main() -> int:
    tool, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((schema_dir / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in CASES:
        proc = subprocess.run([tool, *args], capture_output=True, text=True, check=False)
        label = " ".join(a if len(a) < 40 else a[:37] + "..." for a in args[:3])
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: e.path)
        if errors:
            failures += 1
            print(f"FAIL {label}: {errors[0].message}")
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
