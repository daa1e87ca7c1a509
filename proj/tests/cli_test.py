#!/usr/bin/env python3
"""Runs the nwb binary over the sample inputs: exit codes, output, byte-identical
reruns, and JSON reports against tools/report.schema.json."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

NWB, ROOT = sys.argv[1], sys.argv[2]
SAMPLES = os.path.join(ROOT, "samples")
schema = json.load(open(os.path.join(ROOT, "tools", "report.schema.json")))
failures = []


def s(name):
    return os.path.join(SAMPLES, name)


def run(args):
    p = subprocess.run([NWB] + args, capture_output=True, text=True, timeout=300)
    return p.returncode, p.stdout, p.stderr


def case(name, args, code, expect=None):
    rc, out, err = run(args)
    ok = rc == code and (expect is None or expect in out)
    rc2, out2, _ = run(args)
    if (rc2, out2) != (rc, out):
        ok = False
        err += "\nsecond run differs"
    if ok and rc in (0, 1):
        rcj, js, errj = run(args + ["--format", "json"])
        if "--out" in args:
            js = open(args[args.index("--out") + 1]).read()
        try:
            report = json.loads(js)
            jsonschema.validate(report, schema)
        except Exception as e:  # noqa: BLE001
            ok = False
            err += f"\njson report: {e} {errj}"
    print(f"{'ok  ' if ok else 'FAIL'} {name}: exit {rc}")
    if not ok:
        failures.append(name)
        print(f"  args {args}\n  stdout {out!r}\n  stderr {err!r}")


S1, U2, U3 = "schreier(1)", "uniform(2)", "uniform(3)"

case("rank of schreier", ["barrier", "rank", "--code", S1], 0, "w\n")
case("rank from a code file", ["barrier", "rank", "--code", s("omega_plus_one.code")], 0, "w + 1")
case("rank from JSON code", ["barrier", "rank", "--code", s("mixed_glue.json")], 0, "w + 1")
case("sperner on w+1 example", ["barrier", "verify-sperner", "--code", s("omega_plus_one.code"), "--bound", "12"], 0, "Pass")
case("sperner failure", ["barrier", "verify-sperner", "--code", "glue{0: uniform(2); 1: uniform(1); tail: uniformAff(0,1)}"], 1, "Fail")
case("cover", ["barrier", "verify-cover", "--code", S1, "--bound", "10"], 0, "Pass")
case("node rank off the tree", ["barrier", "node-rank", "--code", U2, "--set", "{1,2,3}"], 0, "-1")
case("sub-barrier", ["barrier", "sub-barrier", "--code", S1, "--set", "{2}"], 0)
case("end replacement", ["barrier", "end-replace", "--a", "{0,2,4,6}", "--b", "{5}"], 0, "{0,2,4,5}")
case("first segment", ["barrier", "first-segment", "--code", S1, "--desc", "arith(3,2)"], 0, "{3,5,7,9}")
case("uniformize", ["barrier", "uniformize", "--code", "glue{0: uniform(2); 1: uniform(2); 2: uniform(2); tail: uniformAff(1,0)}"], 0)
case("uniformize needs rank w", ["barrier", "uniformize", "--code", s("omega_plus_one.code")], 2)
case("terminal node", ["barrier", "sub-barrier", "--code", U2, "--set", "{1,2}"], 2)
case("missing code", ["barrier", "rank"], 2)
case("bad code", ["barrier", "rank", "--code", "bogus(1)"], 2)
case("depth above bound", ["--bound", "4", "--depth", "9", "barrier", "rank", "--code", U2], 2)

case("parity search", ["ramsey", "search", "--code", U2, "--coloring", "parity", "--target", "4", "--bound", "18"], 0, "set")
case("csv coloring", ["ramsey", "search", "--code", U2, "--coloring", s("pairs_12.csv"), "--target", "3"], 0, "set")
case("search not found", ["ramsey", "search", "--code", U2, "--coloring", "parity", "--target", "6", "--bound", "5"], 1)
case("almost", ["ramsey", "almost", "--code", U2, "--coloring", "parity", "--coloring", "min-mod(2)", "--bound", "20"], 0)
case("diagonal", ["ramsey", "diagonal", "--code", S1, "--coloring", "min-mod(2)", "--coloring", "hash(4)", "--bound", "20"], 0)

tmp = tempfile.mkdtemp()
wit = os.path.join(tmp, "w.json")
case("synthesize", ["embed", "synthesize", "--B", S1, "--C", U3, "--steps", "6", "--out", wit], 0)
run(["embed", "synthesize", "--B", S1, "--C", U3, "--steps", "6", "--format", "json", "--out", wit])
case("verify witness", ["embed", "verify", "--B", S1, "--C", U3, "--witness", wit, "--bound", "24"], 0, "Pass")
case("sampled verify", ["embed", "verify", "--B", S1, "--C", U3, "--witness", wit, "--bound", "30", "--samples", "20", "--seed", "9"], 0, "# seed 9")
bad = json.load(open(wit))
bad["result"]["breakpoints"][0] = 0
badp = os.path.join(tmp, "bad.json")
json.dump(bad, open(badp, "w"))
case("corrupted witness", ["embed", "verify", "--B", S1, "--C", U3, "--witness", badp, "--bound", "24"], 1, "Fail")
case("fuel", ["embed", "synthesize", "--B", S1, "--C", U3, "--fuel", "2"], 3)
case("rank order", ["embed", "synthesize", "--B", U2, "--C", U3], 2)
case("rank omega", ["embed", "synthesize", "--B", "schreier(2)", "--C", S1, "--rank-omega", "--bound", "24"], 0)
case("compare", ["embed", "compare", "--B", U2, "--C", S1, "--depth", "8"], 0, "BleqC")

case("avoid", ["ideals", "avoid", "--code", U2, "--fin", s("fin_two_columns.json"), "--bound", "16"], 0, "Pass")
case("avoid outside the ideal", ["ideals", "avoid", "--code", U2, "--fin", '"all"'], 2)
cert = os.path.join(tmp, "c.json")
run(["--bound", "16", "--depth", "4", "ideals", "shrink", "--B", "uniform(1)", "--C", U2, "--map", s("shift_map.json"), "--format", "json", "--out", cert])
case("shrink", ["--bound", "16", "--depth", "4", "ideals", "shrink", "--B", "uniform(1)", "--C", U2, "--map", s("shift_map.json")], 0, "HechlerDisjoint")
case("shrink random map", ["ideals", "shrink", "--B", U2, "--C", U3, "--map", "random", "--seed", "4", "--bound", "10"], 0, "# seed 4")
case("shrink brute force", ["ideals", "shrink", "--B", "uniform(1)", "--C", S1, "--map", "random", "--seed", "4", "--bound", "10", "--bruteforce"], 0)
case("verify certificate", ["--bound", "16", "ideals", "verify", "--B", "uniform(1)", "--C", U2, "--map", s("shift_map.json"), "--cert", cert], 0, "Pass")
case("dominate", ["ideals", "dominate", "--code", U2, "--tree", '{"thresholds":[[[],3]]}', "--tree", '{"thresholds":[[[],5]]}'], 0, "[[],6]")
case("stage", ["--bound", "30", "--depth", "4", "ideals", "stage", "--code", U2, "--e", "arith(0,2)", "--current", cert], 0, "Pass")
case("grid uncovered", ["ideals", "verify", "--C", U2, "--family", "[]", "--grid", "arith(0,2)"], 1, "uncovered")
case("grid covered", ["--bound", "20", "ideals", "verify", "--C", U2, "--family", "[[[0,2],[4,6]]]", "--grid", "arith(0,2)"], 0, "Pass")
case("branch", ["ideals", "branch", "--tree", '{"thresholds":[[[],4]]}', "--bound", "10"], 0, "{4,5,6,7,8,9}")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
