# Copyright 2026 The ergocert Authors
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


"""Runs the ergocert binary over a table of invocations.

Mode "exit-codes" checks the process exit status of each case. Mode
"schemas" validates every JSON document the tool writes against the shipped
schemas, and checks that reports are reproducible and that a printed config
replays to the same report.
"""

import argparse
import json
import os
import subprocess
import sys
import tempfile

AI_HALF = '{"phi": {"family": "linear", "c": 1}, "delta": 0.5}'

# (name, args, expected exit code)
CASES = [
    ("gen", ["gen", "--scenario", "two_state"], 0),
    ("certify_holds", ["certify", "--scenario", "absorbing_pair", "--measure", "half",
                       "--condition", "AlmostInv", "--params", AI_HALF], 0),
    ("certify_fails", ["certify", "--scenario", "absorbing_pair", "--measure", "dirac0",
                       "--condition", "AlmostInv", "--params", AI_HALF], 2),
    ("certify_drift", ["certify", "--scenario", "birth_death", "--param", "n=40",
                       "--condition", "GenDrift"], 0),
    ("certify_unknown_condition", ["certify", "--scenario", "two_state", "--condition", "Bogus"], 1),
    ("certify_missing_condition", ["certify", "--scenario", "two_state"], 1),
    ("certify_missing_inputs", ["certify", "--inputs", "/nonexistent/bundle.json",
                                "--condition", "AlmostInv"], 1),
    ("certify_bad_param", ["certify", "--scenario", "birth_death", "--param", "p_down=2",
                           "--condition", "GenDrift"], 1),
    ("invariant", ["invariant", "--scenario", "birth_death", "--param", "n=30",
                   "--measure", "aux"], 0),
    ("index_profile_fails", ["index-profile", "--scenario", "absorbing_pair",
                             "--measure", "dirac0", "--horizon", "32"], 2),
    ("index_profile_holds", ["index-profile", "--scenario", "absorbing_pair",
                             "--measure", "half", "--horizon", "32"], 0),
    ("resolvent", ["resolvent", "--scenario", "ctmc_symmetric", "--measure", "invariant"], 0),
    ("harnack", ["harnack", "--scenario", "ou_grid", "--param", "n=21"], 0),
    ("perturb", ["perturb", "--scenario", "lazy", "--param", "n=31"], 0),
    ("convergence", ["convergence", "--scenario", "two_state"], 0),
    ("convergence_grid", ["convergence", "--scenario", "two_state", "--grid", "1,2,4,8"], 0),
    ("no_subcommand", [], 1),
]

# Cases whose stdout is a report (everything except gen and usage errors).
REPORT_CASES = {"certify_holds", "certify_fails", "certify_drift", "invariant",
                "index_profile_fails", "index_profile_holds", "resolvent", "harnack",
                "perturb", "convergence"}


def run(binary, args, cwd=None):
    return subprocess.run([os.path.abspath(binary)] + args, capture_output=True, text=True, cwd=cwd, timeout=300)


def check_exit_codes(binary):
    failures = 0
    for name, args, expected in CASES:
        proc = run(binary, args)
        ok = proc.returncode == expected
        print(f"{'ok  ' if ok else 'FAIL'} {name}: exit {proc.returncode}, expected {expected}")
        if not ok:
            failures += 1
            sys.stderr.write(proc.stderr[-2000:])
    return failures


def check_schemas(binary, schema_dir):
    import jsonschema

    def load(name):
        with open(os.path.join(schema_dir, name)) as f:
            return json.load(f)

    schemas = {k: load(f"{k}.schema.json") for k in ("report", "bundle", "config")}
    failures = 0

    def validate(kind, doc, label):
        nonlocal failures
        try:
            jsonschema.validate(doc, schemas[kind])
            print(f"ok   {label} is a valid {kind}")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL {label}: {e.message} at {list(e.absolute_path)}")

    for name, args, _ in CASES:
        if name == "gen":
            validate("bundle", json.loads(run(binary, args).stdout), name)
        elif name in REPORT_CASES:
            validate("report", json.loads(run(binary, args).stdout), name)
            cfg = json.loads(run(binary, args + ["--print-config"]).stdout)
            validate("config", cfg, name + " --print-config")

    with tempfile.TemporaryDirectory() as tmp:
        # gen -> file -> certify --inputs.
        bundle = os.path.join(tmp, "bundle.json")
        run(binary, ["gen", "--scenario", "absorbing_pair", "-o", bundle])
        proc = run(binary, ["certify", "--inputs", bundle, "--measure", "half",
                            "--condition", "AlmostInv", "--params", AI_HALF])
        if proc.returncode != 0:
            failures += 1
            print("FAIL certify from a generated bundle file")
        validate("report", json.loads(proc.stdout), "certify --inputs")

        # Printed config replays to the same report, byte for byte.
        args = ["certify", "--scenario", "birth_death", "--param", "n=40", "--aux", "uniform",
                "--condition", "AssumpB", "--no-timing"]
        direct = run(binary, args)
        cfg_path = os.path.join(tmp, "config.json")
        with open(cfg_path, "w") as f:
            f.write(run(binary, args + ["--print-config"]).stdout)
        replay = run(binary, ["pipeline", cfg_path, "--no-timing"])
        if direct.stdout != replay.stdout or direct.returncode != replay.returncode:
            failures += 1
            print("FAIL printed config does not replay to the same report")
        else:
            print("ok   printed config replays byte-identically")

        # Reproducible pipeline runs with report and CSV outputs.
        config = {
            "scenario": {"id": "random_chain", "params": {"n": 15}, "seed": 11},
            "steps": [{"op": "auxiliary_measure"}, {"op": "check_a2"},
                      {"op": "index_profile", "horizon": 32}, {"op": "solve"},
                      {"op": "existence", "horizon": 32}],
            "output": {"report": "out/report.json", "csv_dir": "out/csv", "timing": False},
        }
        validate("config", config, "hand-written config")
        with open(os.path.join(tmp, "pipe.json"), "w") as f:
            json.dump(config, f)
        texts = []
        for _ in range(2):
            proc = run(binary, ["pipeline", "pipe.json"], cwd=tmp)
            with open(os.path.join(tmp, "out", "report.json")) as f:
                texts.append(f.read())
        validate("report", json.loads(texts[0]), "pipeline report file")
        csvs = sorted(os.listdir(os.path.join(tmp, "out", "csv")))
        if texts[0] != texts[1]:
            failures += 1
            print("FAIL pipeline reports differ between runs")
        elif not csvs:
            failures += 1
            print("FAIL pipeline wrote no CSV series")
        else:
            print(f"ok   pipeline report reproducible; csv: {', '.join(csvs)}")
    return failures


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("mode", choices=["exit-codes", "schemas"])
    parser.add_argument("binary")
    parser.add_argument("--schemas", default="")
    a = parser.parse_args()
    failures = check_exit_codes(a.binary) if a.mode == "exit-codes" else check_schemas(a.binary, a.schemas)
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
