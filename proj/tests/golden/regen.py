"""Rewrite the golden outputs listed in cases.json from a qwalk binary.

Usage: python tests/golden/regen.py build/qwalk
Review the diff before committing; these files pin the CLI contract.
"""
import json
import pathlib
import subprocess
import sys

here = pathlib.Path(__file__).resolve().parent
cli = sys.argv[1]
for case in json.loads((here / "cases.json").read_text()):
    if "golden" not in case:
        continue
    run = subprocess.run([cli, *case["args"]], capture_output=True, text=True)
    if run.returncode != case["exit"]:
        sys.exit(f"{case['name']}: exit {run.returncode}, expected {case['exit']}")
    (here / case["golden"]).write_text(run.stdout)
    print("wrote", case["golden"])
