#!/usr/bin/env python3
# Copyright 2026 The qmeas Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Runs every qmeas subcommand, validates its JSON output and run manifest
against the shipped schemas, and checks that reruns are byte-identical.

usage: validate_schemas.py <qmeas-binary> <schema-dir> <work-dir>
"""

import json
import math
import pathlib
import subprocess
import sys

import jsonschema


def matrix(rows):
    flat = [x for row in rows for x in row]
    return {
        "rows": len(rows),
        "cols": len(rows[0]),
        "data": [[complex(x).real, complex(x).imag] for x in flat],
    }


def write(path, obj):
    path.write_text(json.dumps(obj, indent=2) + "\n")
    return str(path)


def main():
    cli, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    work.mkdir(parents=True, exist_ok=True)
    schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    for s in schemas.values():
        jsonschema.Draft202012Validator.check_schema(s)

    h = 1 / math.sqrt(2)
    z = write(work / "z.json", {"labels": ["+", "-"], "effects": [matrix([[1, 0], [0, 0]]), matrix([[0, 0], [0, 1]])]})
    x = write(work / "x.json", {"labels": ["+", "-"],
                                "effects": [matrix([[.5, .5], [.5, .5]]), matrix([[.5, -.5], [-.5, .5]])]})
    plus = write(work / "plus.json", matrix([[.5, .5], [.5, .5]]))
    zero = write(work / "zero.json", matrix([[1, 0], [0, 0]]))
    lz = write(work / "lz.json", {"dims": [2, 2], "branches": {"0": [matrix([[1, 0], [0, 0]])],
                                                             "1": [matrix([[0, 0], [0, 1]])]}})
    ident = write(work / "id.json", {"dims": [2, 2], "branches": {"id": [matrix([[1, 0], [0, 1]])]}})
    cnot = write(work / "cnot.json", matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]))
    for f, kind in [(z, "povm"), (x, "povm"), (plus, "matrix"), (lz, "instrument"), (ident, "instrument")]:
        jsonschema.validate(json.loads(pathlib.Path(f).read_text()), schemas[kind])

    runs = [
        ("eta_sweep", ["eta-sweep", "--kappa", "0,0.5,1", "--delta", "1,2", "--format", "json"], 0),
        ("induce", ["induce", "--kappa", "1", "--delta", "1"], 0),
        ("induce", ["induce", "--unitary", cnot, "--apparatus", zero, "--readout", z], 0),
        ("compat_report", ["compat", z, x], 0),
        ("compat_report", ["compat", z, z], 0),
        ("compat_report", ["joint-instrument", lz, ident], 0),
        ("compat_report", ["joint-instrument", lz, lz, "--strict"], 0),
        ("event_log", ["sample", "--povm", x, "--state", plus, "--shots", "1000", "--seed", "3"], 0),
        ("event_log", ["sample", "--instrument", lz, "--state", plus, "--shots", "50"], 0),
        ("tomography_result", ["tomo", "--kappa", "1", "--delta", "1", "--shots", "2000", "--bootstrap", "20"], 0),
        ("tomography_result", ["tomo", "--povm", x, "--shots", "2000", "--bootstrap", "20", "--seed", "9"], 0),
        ("wigner_friend", ["wigner-friend"], 0),
        ("wigner_friend", ["wigner-friend", "--basis", "computational", "--system", "0"], 0),
    ]
    failures = 0
    for i, (schema, args, want) in enumerate(runs):
        out = work / f"out{i}.json"
        bodies = []
        for _ in range(2):
            proc = subprocess.run([cli, *args, "--out", str(out)], capture_output=True)
            if proc.returncode != want:
                print(f"FAIL exit {proc.returncode} != {want}: {args}\n{proc.stderr.decode()}")
                failures += 1
                break
            bodies.append((out.read_bytes(), pathlib.Path(str(out) + ".manifest.json").read_bytes()))
        else:
            if bodies[0] != bodies[1]:
                print(f"FAIL non-deterministic output: {args}")
                failures += 1
            try:
                jsonschema.validate(json.loads(bodies[0][0]), schemas[schema])
                jsonschema.validate(json.loads(bodies[0][1]), schemas["manifest"])
                print(f"ok   {schema:18s} {' '.join(a if '/' not in a else pathlib.Path(a).name for a in args)}")
            except jsonschema.ValidationError as e:
                print(f"FAIL schema {schema}: {args}: {e.message}")
                failures += 1

    # Outputs written by one subcommand are valid inputs to another.
    wf = json.loads((work / "out11.json").read_text())
    fi = write(work / "friend.json", wf["friend_instrument"])
    wi = write(work / "wigner.json", wf["wigner_instrument"])
    proc = subprocess.run([cli, "joint-instrument", wi, fi], capture_output=True)
    verdict = json.loads(proc.stdout)["verdict"] if proc.returncode == 0 else None
    if verdict != "incompatible":
        print(f"FAIL wigner/friend instruments round trip: {verdict}")
        failures += 1

    errors = [
        (["sample", "--povm", x, "--state", plus, "--shots", "0"], 1),
        (["compat", z, str(work / "missing.json")], 3),
        (["eta-sweep", "--kappa", "1", "--delta", "1", "--bogus"], 1),
        (["frobnicate"], 1),
        (["compat", z, x, "--max-iter", "2"], 2),
    ]
    for args, want in errors:
        proc = subprocess.run([cli, *args], capture_output=True)
        if proc.returncode != want:
            print(f"FAIL exit {proc.returncode} != {want}: {args}")
            failures += 1
        else:
            print(f"ok   exit {want}            {args[0]}")
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
