"""End-to-end checks of the combphys command-line tool.

usage: check_cli.py path/to/combphys
"""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile
from fractions import Fraction

CLI = sys.argv[1]
failures = []


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)
    return proc.returncode, proc.stdout, proc.stderr


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def full_matrix(j):
    size = j["size"]
    rows = []
    for i in range(size):
        row = [Fraction(x) for x in j["rows"][i]] + [Fraction(1)] + [Fraction(0)] * (size - i - 1)
        rows.append(row)
    return rows


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def stirling2(n, k):
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


# diagrams --n 3 --format csv: multiplicities add up to B_3^2 = 25.
code, out, _ = run("diagrams", "--n", "3", "--format", "csv")
rows = list(csv.DictReader(io.StringIO(out)))
check(code == 0 and sum(int(r["mult"]) for r in rows) == 25, "diagrams --n 3 total multiplicity 25")
check(list(rows[0].keys()) == ["n", "canonical_matrix_flat", "mult", "alpha", "beta"], "diagram csv header")

# power: square of the half power is the Stirling matrix.
code, out, _ = run("power", "--g", "1", "--phi", "exp-1", "--t", "1/2", "--size", "6")
doc = json.loads(out)
half = full_matrix(doc["matrix"])
sq = matmul(half, half)
check(code == 0 and all(sq[n][k] == stirling2(n, k) for n in range(6) for k in range(6)),
      "power --t 1/2 squares to the Stirling matrix")
check(doc["schema"] == 1 and doc["command"] == "power", "json carries schema and command")
check(doc["is_substitution_with_prefunction"] is True, "half power is a substitution with prefunction")

# montecarlo example: estimate present, bound 1/10.
code, out, _ = run("montecarlo", "--n", "4", "--r", "10", "--drawings", "275", "--seed", "42")
doc = json.loads(out)
check(code == 0 and doc["bound"] == "1/10" and "estimate" in doc, "montecarlo json has estimate and bound 1/10")
check(Fraction(doc["estimate"]) == Fraction(doc["hits"], 275), "estimate is hits/drawings")
check(doc["elapsed_ms"] is None, "no timing unless --timing")
code, out, _ = run("montecarlo", "--n", "3", "--r", "10", "--drawings", "300", "--seed", "1")
check(json.loads(out)["estimate"] == "1", "size 3 estimate is 1")

# Exhaustive probability and the budget override.
code, out, _ = run("montecarlo", "--action", "exhaustive", "--n", "4", "--r", "10")
check(code == 0 and json.loads(out)["p_exact"] == "3/125", "exhaustive p_4(r=10) = 3/125")
code, _, err = run("montecarlo", "--action", "exhaustive", "--n", "4", "--r", "10", env={"COMBPHYS_BUDGET": "1000"})
check(code == 3 and "budget" in err, "COMBPHYS_BUDGET lowers the guard (exit 3)")
code, _, _ = run("montecarlo", "--action", "exhaustive", "--n", "10", "--r", "10")
check(code == 3, "over-budget exhaustive run exits 3")
code, _, _ = run("montecarlo", "--action", "exhaustive", "--n", "4", "--r", "10", env={"COMBPHYS_BUDGET": "abc"})
check(code == 1, "malformed COMBPHYS_BUDGET is a domain error")

# Exit codes.
code, _, err = run("diagrams", "--n", "3", "--bogus")
check(code == 2 and "Usage" in err, "unknown flag: exit 2 with help text")
code, _, _ = run("frobnicate")
check(code == 2, "unknown subcommand: exit 2")
code, _, err = run("riordan", "--g", "2,1", "--phi", "z", "--size", "2")
check(code == 1 and "prefunction" in err, "g_0 != 1: exit 1")
code, _, _ = run("mult", "--matrix", "1 0/0 0")
check(code == 1, "unpacked matrix: exit 1")

# Decimal rendering is display only.
code, out, _ = run("field", "--phi", "exp-1", "--size", "5", "--format", "csv", "--decimal", "3")
rows = list(csv.DictReader(io.StringIO(out)))
check(code == 0 and rows[2]["taylor_coeff"] == "0.500" and rows[2]["egf_coeff"] == "1.000", "field csv with --decimal")

# Matrix roundtrip through --from.
code, out, _ = run("riordan", "--g", "exp", "--phi", "z*exp", "--size", "5")
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    fh.write(out)
    path = fh.name
code, out, _ = run("riordan", "--from", path)
os.unlink(path)
doc = json.loads(out)
check(code == 0 and doc["is_substitution_with_prefunction"] and doc["phi"]["egf_coeffs"] == ["0", "1", "2", "3", "4"],
      "riordan --from recovers (g, phi)")

# Exponential formula with oracle cross-check.
code, out, _ = run("expformula", "--family", "idempotent", "--size", "6", "--oracle")
doc = json.loads(out)
check(code == 0 and doc["oracle_agrees"] is True and doc["matrix"]["rows"][3][1] == "3", "expformula idempotent oracle")

# Generator and probe.
code, out, _ = run("log", "--g", "1", "--phi", "exp-1", "--size", "6")
doc = json.loads(out)
check(code == 0 and doc["v"]["egf_coeffs"] == ["0"] * 6 and doc["q"]["egf_coeffs"][2] == "1", "log of Stirling: v = 0, q_2 = 1")
code, out, _ = run("log", "--g", "exp", "--phi", "z", "--size", "6", "--probe", "100")
check(code == 0 and "max_abs_error" in json.loads(out), "log --probe reports its error")

# Hadamard: both routes agree.
_, a, _ = run("hadamard", "--n", "4", "--format", "csv")
_, b, _ = run("hadamard", "--n", "4", "--via", "bell", "--format", "csv")
check(a == b and a.count("\n") == 26, "hadamard via diagrams equals via Bell sum")

# Every subcommand answers --help.
for sub in ["hadamard", "diagrams", "mult", "riordan", "power", "log", "field", "expformula", "montecarlo"]:
    code, out, _ = run(sub, "--help")
    check(code == 0 and "Usage" in out, sub + " --help")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
