#!/usr/bin/env python3
"""Run every command at desk scale and validate its output against docs/output.schema.json."""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["graph", "info", "--d", "4"],
    ["iso", "check", "--d", "3", "--k", "2"],
    ["iso", "check", "--d", "4", "--vertices", "0,1"],
    ["count", "exact", "--d", "2", "--q", "4"],
    ["count", "exact", "--d", "3", "--q", "3", "--method", "layer"],
    ["flaw", "analyze", "--d", "2", "--q", "4"],
    ["flaw", "analyze", "--d", "2", "--q", "4", "--coloring", "1,1,1,3,3,3"],
    ["polymers", "enumerate", "--d", "3", "--max-size", "2"],
    ["polymers", "enumerate", "--d", "3", "--max-size", "2", "--vertex", "0"],
    ["polymers", "weight", "--d", "2", "--q", "4", "--vertices", "0,1"],
    ["xi", "compute", "--d", "2", "--q", "4"],
    ["capture", "check", "--d", "2", "--q", "4", "--max-size", "1"],
    ["clusters", "lk", "--d", "3", "--q", "4", "--k", "2"],
    ["expansion", "approx", "--d", "6", "--q", "5"],
    ["expansion", "compare", "--d", "2", "--q", "4"],
    ["expansion", "logcheck", "--d", "2", "--q", "4", "--max-size", "2", "--k", "3"],
    ["expansion", "bounds", "--d", "3", "--q", "4", "--k", "2", "--max-size", "2"],
    ["kp", "check", "--d", "2", "--q", "4", "--max-size", "2"],
    ["containers", "cover", "--d", "3"],
    ["containers", "cover", "--d", "3", "--vertices", "0,1"],
    ["containers", "pair", "--d", "4", "--vertices", "0,1"],
    ["containers", "verify", "--d", "3", "--vertices", "0", "--F", "10,11,12", "--S", "0"],
    ["sample", "run", "--samples", "20", "--seed", "3"],
    ["sample", "stats", "--samples", "200"],
]

ERRORS = [
    ["graph", "info", "--d", "1"],
    ["count", "exact", "--d", "3", "--method", "brute"],
]


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    defs = schema["$defs"]
    failures = 0

    def check(doc, name):
        nonlocal failures
        sub = {"$schema": schema["$schema"], "$defs": defs, "$ref": f"#/$defs/{name}"}
        try:
            jsonschema.validate(doc, sub)
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL {name}: {e.message}")

    for args in COMMANDS:
        r = subprocess.run([binary, *args], capture_output=True, text=True)
        name = f"{args[0]}_{args[1]}"
        if r.returncode != 0:
            failures += 1
            print(f"FAIL {' '.join(args)}: exit {r.returncode}: {r.stderr.strip()}")
            continue
        lines = r.stdout.splitlines() if name == "sample_run" else [r.stdout]
        for line in lines:
            check(json.loads(line), name)
    for args in ERRORS:
        r = subprocess.run([binary, *args], capture_output=True, text=True)
        check(json.loads(r.stderr), "error")
    print(f"{len(COMMANDS) + len(ERRORS)} commands checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
