"""Runs the CLI on a few inputs and validates every document against docs/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

cli, schema_dir, data_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

schemas = {}
registry = Registry()
for path in schema_dir.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    Draft202012Validator.check_schema(doc)
    schemas[path.name.removesuffix(".schema.json")] = doc
    registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))


def check(name, doc):
    errors = list(Draft202012Validator(schemas[name], registry=registry).iter_errors(doc))
    for e in errors:
        print(f"{name}: {e.json_path}: {e.message}")
    return not errors


def cli_out(*args):
    return subprocess.run([cli, *args], capture_output=True, text=True).stdout


ok = True
for args in (["--catalog", "cw-max", "--killing", "--timings"],
             ["--catalog", "ads4xs7", "--param", "s=-6"],
             ["--file", str(data_dir / "broken.json")],
             ["--catalog", "flat", "--holonomy"]):
    ok &= check("report", json.loads(cli_out("verify", *args)))

ok &= check("error", json.loads(cli_out("verify", "--file", str(data_dir / "bad_expression.json"))))
ok &= check("error", json.loads(cli_out("reduce", "--catalog", "cw-max", "--along", "x9")))
ok &= check("catalog", json.loads(cli_out("catalog")))

for line in cli_out("scan-cw", "--block", "3:-1:0:1", "--block", "6:-1/2:-1/4:1/4").splitlines():
    ok &= check("scan-line", json.loads(line))

for path in data_dir.glob("*.json"):
    if path.name != "bad_expression.json":
        ok &= check("background", json.loads(path.read_text()))

with tempfile.TemporaryDirectory() as tmp:
    iia = pathlib.Path(tmp) / "iia.json"
    back = pathlib.Path(tmp) / "back.json"
    subprocess.run([cli, "reduce", "--catalog", "flat", "--along", "x10", "--out", str(iia)], check=True)
    subprocess.run([cli, "oxidize", "--file", str(iia), "--out", str(back)], check=True)
    ok &= check("iia", json.loads(iia.read_text()))
    ok &= check("background", json.loads(back.read_text()))

print("all documents schema-valid" if ok else "schema violations found")
sys.exit(0 if ok else 1)
