"""Runs the CLI and validates every JSON it writes against schemas/."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
registry = Registry().with_resources(
    (f"rainbow/{name}", Resource.from_contents(s)) for name, s in schemas.items()
)


def check(name, doc):
    validator = jsonschema.Draft202012Validator(schemas[name], registry=registry)
    errors = list(validator.iter_errors(doc))
    if errors:
        print(f"FAIL {name}: {errors[0].message}")
        sys.exit(1)
    print(f"ok {name}")


def run(*args, ok=(0,)):
    r = subprocess.run([cli, *args], capture_output=True, text=True, input="")
    if r.returncode not in ok:
        print(r.stdout, r.stderr)
        sys.exit(f"{args} exited {r.returncode}")
    return r.stdout


with tempfile.TemporaryDirectory() as tmp:
    t = pathlib.Path(tmp)
    small = ["--preset", "ca-n2-n1", "--n", "3"]
    check("atom_structure.schema.json", json.loads(run("build", *small)))
    run("build", *small, "--atoms", "--out", str(t / "s.json"))
    atoms = json.loads((t / "s.json").read_text())
    check("atom_structure.schema.json", atoms)
    check("spec.schema.json", atoms["spec"])
    check("graph.schema.json", atoms["atoms"][0]["graph"])

    check("report.schema.json", json.loads(run("solve", *small, "--game", "g3", "--cert", str(t / "c3.json"))))
    check("certificate.schema.json", json.loads((t / "c3.json").read_text()))
    run("verify-script", *small, "--rounds", "6", "--cert", str(t / "c6.json"))
    check("certificate.schema.json", json.loads((t / "c6.json").read_text()))
    run("verify-script", *small, "--rounds", "3", "--cert", str(t / "r3.json"), ok=(1,))
    check("certificate.schema.json", json.loads((t / "r3.json").read_text()))

    run("blowup", *small, "--split", "2", "--samples", "20", "--report", str(t / "b.json"))
    check("report.schema.json", json.loads((t / "b.json").read_text()))
    run("axioms", *small, "--samples", "20", "--report", str(t / "a.json"))
    a1 = (t / "a.json").read_text()
    check("report.schema.json", json.loads(a1))
    run("axioms", *small, "--samples", "20", "--report", str(t / "a2.json"))
    if a1 != (t / "a2.json").read_text():
        sys.exit("axiom reports differ between identical runs")
    print("ok byte-identical rerun")

    run("play", *small, "--rounds", "3", "--transcript", str(t / "tr.json"))
    check("transcript.schema.json", json.loads((t / "tr.json").read_text()))
