#!/usr/bin/env python3
"""Regenerate tests/golden/*.out from tests/golden/cases.json using a built gle_spectra."""
import json
import pathlib
import subprocess
import sys

root = pathlib.Path(__file__).resolve().parent.parent
binary = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else root / "build" / "tools" / "gle_spectra"
golden = root / "tests" / "golden"

for case in json.loads((golden / "cases.json").read_text()):
    out = golden / f"{case['name']}.out"
    args = [a.replace("@OUT@", str(out)) for a in case["args"]]
    res = subprocess.run([str(binary), *args], cwd=root, capture_output=True, text=True)
    if res.returncode != 0:
        sys.exit(f"{case['name']}: exit {res.returncode}\n{res.stderr}")
    out.write_text(res.stdout)
    print(f"wrote {out.relative_to(root)}")
