"""End-to-end checks of the command-line tool: exit codes, report files,
flag/config precedence, determinism and SVG well-formedness."""

import json
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

CLI = sys.argv[1]
OUT = sys.argv[2]
os.makedirs(OUT, exist_ok=True)
failures = []


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def expect(cond, what):
    if not cond:
        failures.append(what)


def path(name):
    return os.path.join(OUT, name)


# Growth table and lattice verdict.
p = run("growth", "--r", "5", "--q", "3", "--out", path("growth.json"), "--csv", path("growth.csv"))
expect(p.returncode == 0, "growth exit code %d: %s" % (p.returncode, p.stderr))
rep = json.load(open(path("growth.json")))
expect(rep["results"]["W_inverse_q"] == "16", "W(1/3) at r=5")
expect(rep["config"]["r"] == 5 and rep["version"], "config and version embedded")
rows = open(path("growth.csv")).read().splitlines()
expect(rows[0] == "n,bfs,closed_form,equal" and len(rows) == 10, "growth CSV shape")

# Building with an SVG tiling.
svg_path = path("apartment.svg")
p = run("building", "--depth", "3", "--svg", svg_path, "--out", path("building.json"))
expect(p.returncode == 0, "building exit code %d: %s" % (p.returncode, p.stderr))
root = ET.parse(svg_path).getroot()
expect(root.tag == "{http://www.w3.org/2000/svg}svg", "SVG root element")
polys = root.findall(".//{http://www.w3.org/2000/svg}polygon")
expect(len(polys) == 61, "61 polygons at depth 3, got %d" % len(polys))
lengths = [int(e.get("data-length")) for e in polys]
expect([lengths.count(n) for n in range(4)] == [1, 5, 15, 40], "polygons per length")

# Determinism: same config and seed give identical bytes.
a = run("treewall", "--depth", "4", "--seed", "3")
b = run("treewall", "--depth", "4", "--seed", "3")
expect(a.returncode == 0 and a.stdout == b.stdout, "treewall output is not deterministic")

# Config file with flag override.
cfg = path("config.json")
json.dump({"q": 2, "depth": 2, "n_max": 4, "window": 12}, open(cfg, "w"))
p = run("chabauty", "--config", cfg, "--nmax", "5")
expect(p.returncode == 0, "chabauty from config: %s" % p.stderr)
rep = json.loads(p.stdout)
expect(rep["config"]["n_max"] == 5 and rep["config"]["window"] == 12, "flags override the config")
expect(rep["results"]["verdict"] == "Converged", "chabauty verdict")

# Errors are reported before any computation, with exit code 2.
p = run("treewall", "--q", "6")
expect(p.returncode == 2 and "not a prime power" in p.stderr, "q=6 rejected")
p = run("chabauty", "--window", "5")
expect(p.returncode == 2 and "precision" in p.stderr, "precision guard")
p = run("growth", "--r", "4")
expect(p.returncode == 2, "r=4 rejected")
p = run()
expect(p.returncode != 0, "missing subcommand rejected")

# A GCM file that is not admissible still runs; the verdict is reported.
gcm = path("gcm.json")
json.dump([[2, -1, 0, 0, -1], [-1, 2, -1, 0, 0], [0, -1, 2, -1, 0], [0, 0, -1, 2, -1],
           [-1, 0, 0, -1, 2]], open(gcm, "w"))
p = run("gcm", "--gcm-file", gcm, "--depth", "4")
expect(p.returncode == 0, "gcm with a file: %s" % p.stderr)
expect(json.loads(p.stdout)["results"]["admissible"] is False, "affine A_4 is not admissible")

if failures:
    for f in failures:
        print("FAIL:", f)
    sys.exit(1)
print("cli smoke checks passed")
