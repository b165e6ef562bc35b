#!/usr/bin/env python3
"""End-to-end checks of the command-line interface, including golden files."""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

BINARY = sys.argv[1]
DATA = Path(sys.argv[2])

failures = []


def run(args, env_extra=None):
    env = dict(os.environ)
    env.pop("RATSUM_BUDGET", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([BINARY] + args, capture_output=True, text=True, env=env)


def check(name, ok, detail=""):
    print(f"[{'ok' if ok else 'FAIL'}] {name} {detail}")
    if not ok:
        failures.append(name)


# --- sum ---
r = run(["sum", "--p", "5", "--d", "2", "--coeffs", "0,0", "--N", "3"])
check("sum zero vector", r.returncode == 0 and r.stdout == "3+0i, |S|=3\n", repr(r.stdout))

r = run(["sum", "--p", "5", "--d", "2", "--coeffs", "1,0", "--N", "5"])
modulus = float(r.stdout.rsplit("|S|=", 1)[1])
check("sum complete geometric", r.returncode == 0 and modulus <= 1e-9, f"|S|={modulus}")

r = run(["sum", "--p", "9", "--d", "2", "--coeffs", "1,0", "--N", "3"])
check("sum rejects composite modulus", r.returncode == 2 and "NotPrime" in r.stderr)

with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as f:
    f.write("1\n-1\n1\n-1\n")
    weights_path = f.name
r = run(["sum", "--p", "11", "--d", "2", "--coeffs", "0,0", "--N", "4",
         "--weights-file", weights_path])
modulus = float(r.stdout.rsplit("|S|=", 1)[1])
check("sum with weights file", r.returncode == 0 and modulus <= 1e-12, f"|S|={modulus}")
os.unlink(weights_path)

# --- count ---
r = run(["count", "R", "--p", "5", "--d", "2", "--s", "1", "--N", "3", "--shift", "0,0"])
check("count R diagonal", r.returncode == 0 and r.stdout == "3\n", repr(r.stdout))

r = run(["count", "J", "--d", "2", "--s", "2", "--N", "2", "--shift", "0,0"])
check("count J rearrangements", r.returncode == 0 and r.stdout == "6\n", repr(r.stdout))

r = run(["count", "R", "--p", "5", "--d", "2", "--s", "1", "--N", "3", "--shift", "0,0",
         "--naive"])
check("count R oracle agrees", r.returncode == 0 and r.stdout == "3\n")

r = run(["count", "T", "--p", "5", "--d", "2", "--s", "1", "--N", "3", "--H", "5,5"])
check("count T unit windows", r.returncode == 0 and r.stdout == "5\n", repr(r.stdout))

r = run(["count", "R", "--p", "20011", "--d", "2", "--s", "2", "--N", "10", "--shift", "0,0"])
check("count R equation regime", r.returncode == 0 and r.stdout == "190\n", repr(r.stdout))

cache = tempfile.mktemp(suffix=".dist")
first = run(["count", "R", "--p", "13", "--d", "2", "--s", "2", "--N", "6", "--shift", "1,0",
             "--dist-cache", cache])
second = run(["count", "R", "--p", "13", "--d", "2", "--s", "2", "--N", "6", "--shift", "1,0",
              "--dist-cache", cache])
plain = run(["count", "R", "--p", "13", "--d", "2", "--s", "2", "--N", "6", "--shift", "1,0"])
check("distribution cache round trip",
      first.stdout == plain.stdout and second.stdout == plain.stdout
      and "saved distribution cache" in first.stderr
      and "loaded distribution cache" in second.stderr)
mismatch = run(["count", "R", "--p", "13", "--d", "2", "--s", "2", "--N", "7", "--shift", "1,0",
                "--dist-cache", cache])
check("mismatched cache parameters are rejected",
      mismatch.returncode == 2 and "does not match" in mismatch.stderr)
os.unlink(cache)

r = run(["count", "R", "--p", "11", "--d", "2", "--s", "2", "--N", "5", "--shift", "1,3",
         "--strategy", "halves"])
direct = run(["count", "R", "--p", "11", "--d", "2", "--s", "2", "--N", "5", "--shift", "1,3",
              "--strategy", "direct"])
check("half-split strategy agrees", r.returncode == 0 and r.stdout == direct.stdout)

# --- moment: determinism and budget gating ---
args = ["moment", "--p", "7", "--d", "2", "--s", "1", "--N", "5", "--method", "sample",
        "--samples", "200", "--seed", "42", "--format", "json"]
first = run(args)
second = run(args)
check("sampled moment is replayable", first.returncode == 0 and first.stdout == second.stdout)
record = json.loads(first.stdout)
check("sampled moment carries seed and stderr",
      record["seed"] == 42 and record["stderr"] > 0 and record["method"] == "sample")

r = run(["moment", "--p", "7", "--d", "2", "--s", "1", "--N", "5", "--method", "sample"])
check("sampling without samples is rejected", r.returncode == 2)

r = run(["moment", "--p", "7", "--d", "2", "--s", "1", "--N", "5", "--method", "sample",
         "--samples", "100"])
check("sampling without a seed is rejected", r.returncode == 2)

r = run(["moment", "--p", "11", "--d", "3", "--s", "1", "--N", "5", "--method", "dft"],
        env_extra={"RATSUM_BUDGET": "100"})
check("environment budget rejects up front", r.returncode == 3 and "WorkBudgetExceeded" in r.stderr)

r = run(["moment", "--p", "7", "--d", "2", "--rho", "3", "--N", "4", "--method", "count"])
check("odd exponent with count method", r.returncode == 2 and "OddExponent" in r.stderr)

# --- restricted ---
r = run(["restricted", "--p", "7", "--d", "2", "--kind", "moment_curve", "--exponent", "2",
         "--N", "3", "--format", "json"])
record = json.loads(r.stdout)
check("restricted moment curve", r.returncode == 0 and record["set_kind"] == "moment_curve"
      and record["s_or_k"] == 2)

r = run(["restricted", "--p", "11", "--d", "2", "--kind", "box", "--exponent", "2", "--N", "4",
         "--offsets", "9,0", "--H", "4", "--format", "json"])
record = json.loads(r.stdout)
check("wrapped boxes are flagged", r.returncode == 0 and "wrapped" in record.get("flags", []))

# --- maximal ---
r = run(["maximal", "--p", "7", "--d", "2", "--k", "1", "--b", "0", "--N", "5"])
check("maximal attains N at zero phase", r.returncode == 0 and r.stdout.strip() == "5")

r = run(["maximal", "--p", "101", "--d", "3", "--k", "1", "--b", "5", "--N", "20",
         "--samples", "50", "--seed", "3", "--budget-evals", "100"])
check("sampled maximal notes the lower bound", r.returncode == 0 and "lower bound" in r.stderr)

# --- verify: golden files, determinism, parallel equivalence ---
for grid, fmt, golden in [
    ("trend.json", "csv", "trend_verify.csv"),
    ("trend.json", "json", "trend_verify.json"),
    ("default.json", "csv", "default_verify.csv"),
    ("default.json", "json", "default_verify.json"),
]:
    r = run(["verify", "--grid", str(DATA / "grids" / grid), "--format", fmt])
    expected = (DATA / "golden" / golden).read_text()
    check(f"verify golden {golden}", r.returncode == 0 and r.stdout == expected,
          "" if r.stdout == expected else "output drifted from the golden file")

one = run(["verify", "--grid", str(DATA / "grids" / "trend.json")])
again = run(["verify", "--grid", str(DATA / "grids" / "trend.json")])
wide = run(["verify", "--grid", str(DATA / "grids" / "trend.json"), "--threads", "3"])
check("verify is byte-deterministic", one.stdout == again.stdout)
check("verify rows are thread-count independent", one.stdout == wide.stdout)

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    f.write('{"families": [{"name": "x", "kind": "mordell_1_3", "rows": [{"q": 5}]}]}')
    bad_grid = f.name
r = run(["verify", "--grid", bad_grid])
check("grid schema errors name the field",
      r.returncode == 2 and "families[0].rows[0].q" in r.stderr, r.stderr.strip())
os.unlink(bad_grid)

r = run(["verify", "--grid", "/nonexistent/grid.json"])
check("missing grid file is an I/O error", r.returncode == 4)

# --- bench and selftest ---
r = run(["bench"])
check("bench reports the timing line", r.returncode == 0 and "seconds=" in r.stdout
      and "value=47640800" in r.stdout, r.stdout.strip())

r = run(["selftest"])
check("selftest passes", r.returncode == 0 and "[FAIL]" not in r.stdout)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
