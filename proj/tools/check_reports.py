"""Runs every scenario and suite through the CLI and validates the reports.

Each report must satisfy docs/report_schema.json, and every table entry must
name a CSV whose header and row count agree with it.

usage: check_reports.py <shiftstab binary> <source dir> <scratch dir>
"""

import csv
import json
import pathlib
import shutil
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, source, scratch = (pathlib.Path(a) for a in sys.argv[1:4])
    schema = json.loads((source / "docs" / "report_schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    shutil.rmtree(scratch, ignore_errors=True)
    scratch.mkdir(parents=True)
    runs = [["run", str(p)] for p in sorted((source / "scenarios").glob("*.toml"))]
    runs += [["suite", "examples"]]

    failures = 0
    for args in runs:
        proc = subprocess.run([str(binary), "--out", str(scratch), *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
    for path in sorted(scratch.glob("*.json")):
        if path.name.endswith(".timing.json"):
            continue
        doc = json.loads(path.read_text())
        errors = list(validator.iter_errors(doc))
        for e in errors:
            print(f"FAIL {path.name}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += len(errors)
        if not (scratch / doc.get("timing_file", "")).is_file():
            print(f"FAIL {path.name}: missing timing sidecar")
            failures += 1
        for table in doc.get("tables", []):
            with open(scratch / table["file"], newline="") as fh:
                rows = list(csv.reader(fh))
            if rows[0] != table["columns"] or len(rows) - 1 != table["rows"]:
                print(f"FAIL {table['file']}: header or row count disagrees with the report")
                failures += 1
        print(f"ok   {path.name}")
    print(f"{len(runs)} runs, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
