"""Command-line checks: exit codes, JSON outputs against the shipped schemas,
deterministic bytes. Usage: check_cli.py <dotlab binary> <repo root> <scratch dir>"""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

BIN, ROOT, SCRATCH = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
FIX = ROOT / "fixtures"
SCRATCH.mkdir(parents=True, exist_ok=True)

schemas = {p.name: json.loads(p.read_text()) for p in (ROOT / "schemas").glob("*.json")}
registry = Registry().with_resources(
    (name, Resource.from_contents(s)) for name, s in schemas.items()
)
failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run(*args):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True)


def valid(doc, schema):
    try:
        jsonschema.Draft202012Validator(schemas[schema], registry=registry).validate(doc)
        return True
    except jsonschema.ValidationError as e:
        print("   ", e.message)
        return False


r = run("validate", FIX / "bad_alternation.poly")
check(r.returncode == 2, "validate bad alternation exits 2")
check("AlternationError at line 1, column" in r.stderr, "error names the kind, line and column")
r = run("validate", FIX / "bad_alternation.poly", "--json")
check(r.returncode == 2 and valid(json.loads(r.stdout), "error.schema.json"), "error JSON")

dg = SCRATCH / "fig.dg"
r = run("extract", FIX / "thm1_case2.poly", "-o", dg)
check(r.returncode == 0 and dg.exists(), "extract writes a .dg file")
r = run("label", dg)
check(r.returncode == 0 and "labels (+1, 0, -1)" in r.stdout, "case-2 labels (+1, 0, -1)")
r = run("label", dg, "--json")
check(valid(json.loads(r.stdout), "labels.schema.json"), "labels JSON")

r = run("moves", dg, "--json")
sites = json.loads(r.stdout)
check(r.returncode == 0 and len(sites) > 0, "moves listed")
check(all(valid(s, "move_site.schema.json") for s in sites), "move sites JSON")
r = run("apply", dg, "--site", json.dumps(sites[0]), "--json")
check(r.returncode == 0 and "diagram" in json.loads(r.stdout), "apply a listed site")
r = run("apply", dg, "--index", "999")
check(r.returncode == 2, "apply with a bad index exits 2")

r = run("reduce", dg, "--json")
doc = json.loads(r.stdout)
check(r.returncode == 0 and doc["reducible"], "case-2 reduces to empty")
check(valid(doc["certificate"], "certificate.schema.json"), "certificate JSON")
r = run("reduce", dg, "--budget-nodes", "1")
check(r.returncode == 3, "tiny search budget exits 3")

r = run("verify", "thm1", "--window", "7x4", "--max-corners", "8", "--budget-depth", "32", "--json")
doc = json.loads(r.stdout)
check(r.returncode == 0 and doc["pass"] and not doc["counterexamples"], "verify thm1 7x4 passes")
check(valid(doc, "report.schema.json"), "report JSON")
r = run("verify", "thm3", "--window", "6x6", "--max-corners", "4", "--json")
doc = json.loads(r.stdout)
check(valid(doc, "report.schema.json"), "theorem-3 report JSON")
check(r.returncode == (1 if doc["counterexamples"] else 0), "verify exit code follows the report")
r = run("verify", "thm9", "--window", "4x4")
check(r.returncode == 2, "unknown check exits 2")
r = run("verify", "lemmas", "--window", "1x4")
check(r.returncode == 2, "window below the minimum exits 2")

lonely = SCRATCH / "lonely.dg"
lonely.write_text("freecircle 0: dots 1 sign + face plane\n")
r = run("verify", "lemmas", "--input", lonely, "--json")
doc = json.loads(r.stdout)
check(r.returncode == 0 and doc["in_scope"] is False, "one-dot circle is outside lemma scope")

out1, out2 = SCRATCH / "c1.jsonl", SCRATCH / "c2.jsonl"
r1 = run("enum", "--window", "5x4", "--components", "1..2", "--max-corners", "6", "--reduce", "-o", out1)
r2 = run("enum", "--window", "5x4", "--components", "1..2", "--max-corners", "6", "--reduce", "-o", out2, "--jobs", "2")
check(r1.returncode == 0 and r2.returncode == 0, "enum runs")
lines = out1.read_text().splitlines()
check(len(lines) > 0 and all(valid(json.loads(l), "census_record.schema.json") for l in lines), "census JSONL")
check(out1.read_bytes() == out2.read_bytes(), "census bytes independent of worker count")

svg1, svg2 = SCRATCH / "a.svg", SCRATCH / "b.svg"
run("render", dg, "-o", svg1)
run("render", dg, "-o", svg2)
check(svg1.read_bytes() == svg2.read_bytes() and b"<svg" in svg1.read_bytes(), "render is deterministic")
r = run("render", lonely, "-o", SCRATCH / "c.svg")
check(r.returncode == 0 and "LayoutFallbackNotice" in r.stderr, "unrealizable diagram falls back")

r = run("realize", dg, "--json")
doc = json.loads(r.stdout)
check(r.returncode == 0 and doc["found"], "realize finds a polytope")
r = run("realize", lonely)
check(r.returncode == 1, "realize without a realization exits 1")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
