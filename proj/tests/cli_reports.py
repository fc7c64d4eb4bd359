"""Runs the symrig binary on the sample inputs and checks exit codes, report
schema validity and byte-identical output across repeated runs."""

import argparse
import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def cases(data: Path):
    d = lambda name: str(data / name)
    search = ["--degree", "2", "--restarts", "2", "--nm-iterations", "60"]
    return [
        ("classify_identity", ["classify", "--matrix", d("identity.json")], 0),
        ("classify_t0", ["classify", "--matrix", d("t0.json")], 0),
        ("classify_malformed", ["classify", "--matrix", d("malformed.json")], 2),
        ("classify_missing_option", ["classify"], 2),
        ("rh_bidisc", ["rh-estimate", "--domain", d("bidisc.json"), *search], 0),
        ("rh_real_bidisc_seeded", ["rh-estimate", "--domain", d("real_bidisc.json"), "--seed", "11", *search], 0),
        ("rh_unknown_variant", ["rh-estimate", "--domain", d("torus.json")], 2),
        ("census_bidisc", ["census", "--domain", d("bidisc.json"), *search], 0),
        ("certify_ball", ["certify", "--domain", d("ball_1_2.json"), "--radius", "1"], 0),
        ("certify_product", ["certify", "--domain", d("real_bidisc_times_disc.json"), "--radius", "1.1"], 0),
        ("solve_bump", ["solve-disc", "--field", d("bump.json"), "--grid", "64x128", "--tol", "1e-4"], 0),
        ("solve_out_of_regime", ["solve-disc", "--field", d("bump.json"), "--norm-bound", "0.9"], 2),
        ("solve_divergence", ["solve-disc", "--field", d("bump.json"), "--grid", "32x64", "--max-iter", "2"], 3),
        ("sweep_twist", ["sweep", "--field", d("twist.json"), "--grid", "32x64", "--radii", "0.5,0.7",
                         "--width", "0.07", "--tol", "1e-2"], 0),
    ]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--binary", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--data", required=True)
    ap.add_argument("--workdir", required=True)
    args = ap.parse_args()

    schema = json.loads(Path(args.schema).read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    work = Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)

    failures = []
    for name, argv, expected in cases(Path(args.data)):
        outputs = []
        for run in range(2):
            out = work / f"{name}.{run}.json"
            out.unlink(missing_ok=True)
            proc = subprocess.run([args.binary, *argv, "--output", str(out)] if argv[1:] else [args.binary, *argv],
                                  capture_output=True, text=True)
            if proc.returncode != expected:
                failures.append(f"{name}: exit {proc.returncode}, expected {expected}\n{proc.stderr}")
                break
            outputs.append(out.read_bytes() if out.exists() else None)
        else:
            if outputs[0] is None:
                # Argument errors are rejected before a report exists.
                if expected != 2:
                    failures.append(f"{name}: no report written")
                print(f"{name}: exit {expected}")
                continue
            if outputs[0] != outputs[1]:
                failures.append(f"{name}: reports differ between identical runs")
            report = json.loads(outputs[0])
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            for e in errors:
                failures.append(f"{name}: schema violation at {list(e.path)}: {e.message}")
            print(f"{name}: exit {expected}, {len(outputs[0])} bytes, schema {'ok' if not errors else 'FAILED'}")

    for f in failures:
        print("FAIL", f, file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
