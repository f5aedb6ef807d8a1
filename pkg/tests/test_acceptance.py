"""Acceptance criteria, each a script of CLI invocations.

Every criterion records a PASS/FAIL line (printed in the terminal summary)
and then asserts, so a failing criterion also fails its test.
"""

import json

import pytest

from mysticum.cli import capture, execute

RESULTS: dict[int, tuple[bool, str, str]] = {}
REPORTS: list[dict] = []

SEEDS = range(25)


def cli(*argv: str) -> dict:
    code, rep = execute([str(a) for a in argv])
    REPORTS.append(rep)
    rep = dict(rep, exit=code)
    return rep


def verdict(n: int, title: str, failures: list[str]) -> None:
    RESULTS[n] = (not failures, title, "; ".join(failures[:5]))
    print(f"{'PASS' if not failures else 'FAIL'} criterion {n}: {title}")
    assert not failures, failures


@pytest.fixture(scope="module")
def gen(tmp_path_factory):
    root = tmp_path_factory.mktemp("acceptance")
    cache: dict = {}

    def make(kind: str, seed: int, **kw) -> str:
        key = (kind, seed, tuple(sorted(kw.items())))
        if key not in cache:
            path = root / f"{kind}-{seed}-{len(cache)}.json"
            extra = [x for k, v in kw.items() for x in (f"--{k}", str(v))]
            rep = cli("gen", "--kind", kind, "--seed", seed, "--out", path, *extra)
            assert rep["exit"] == 0, rep
            cache[key] = str(path)
        return cache[key]

    return make


@pytest.fixture(scope="module")
def hex_verify(gen):
    return {s: cli("hexagon", "verify", "--scene", gen("hex", s), "--trials", 100, "--cubics", 4)
            for s in SEEDS}


@pytest.fixture(scope="module")
def oct_census(gen):
    return cli("octagon", "census", "--scene", gen("oct", 0), "--pencils", "--workers", 1)


def _tally_ok(v) -> bool:
    return v["passed"] == v["total"] > 0


def test_criterion_01_hexagon_census(gen):
    expect_counts = {"pascal_lines": 60, "steiner_points": 20, "kirkman_points": 60,
                     "steiner_pluecker_lines": 15, "cayley_salmon_lines": 20, "salmon_points": 15}
    expect_inc = {"steiner_lines_per_point": [3], "kirkman_lines_per_point": [3],
                  "steiner_points_per_sp_line": [4], "sp_lines_per_steiner_point": [3],
                  "kirkman_per_cs_line": [3], "steiner_per_cs_line": [1],
                  "cs_lines_per_salmon_point": [3]}
    failures = []
    for s in SEEDS:
        rep = cli("hexagon", "census", "--scene", gen("hex", s))
        if rep["exit"] != 0 or rep.get("counts") != expect_counts:
            failures.append(f"seed {s}: counts {rep.get('counts')}")
            continue
        for k, v in expect_inc.items():
            if rep["incidences"][k] != v:
                failures.append(f"seed {s}: {k}={rep['incidences'][k]} (want {v})")
    verdict(1, "hexagon census on 25 seeds", failures)


def test_criterion_03_pascal_and_concurrency_suite(hex_verify):
    failures = []
    for s, rep in hex_verify.items():
        c = rep["checks"]
        for k in ("thm3_1.random_pairs", "thm3_1.classical_orderings", "thm3_3.random_triples"):
            if not _tally_ok(c[k]) or (k != "thm3_1.classical_orderings" and c[k]["total"] != 100):
                failures.append(f"seed {s}: {k} {c[k]}")
    verdict(3, "100 random cubic pairs and triples per scene", failures)


def test_criterion_04_generalized_steiner_line(hex_verify):
    failures = []
    for s, rep in hex_verify.items():
        c = rep["checks"]
        if c["thm4_1.random_cubics"] != {"passed": 4, "total": 4}:
            failures.append(f"seed {s}: {c['thm4_1.random_cubics']}")
        if c["thm4_1.matches_census_sp_line"] is not True:
            failures.append(f"seed {s}: product cubic line not a census line")
    verdict(4, "25 scenes x 4 cubics, collinear Steiner points", failures)


def test_criterion_05_salmon_cayley_and_extras(hex_verify):
    want = {"kirkman_on_line": 3, "steiner_on_line": 1, "construction_points_in_census": True,
            "is_census_cs_line": True}
    failures = []
    for s, rep in hex_verify.items():
        c = rep["checks"]
        if c["thm4_2"] != want:
            failures.append(f"seed {s}: {c['thm4_2']}")
        if not all(c["props4x"].values()):
            failures.append(f"seed {s}: {c['props4x']}")
    verdict(5, "Salmon-Cayley line and auxiliary conics on 25 seeds", failures)


def test_criterion_06_octagon_census(oct_census):
    rep = oct_census
    failures = []
    if rep["exit"] != 0:
        failures.append(f"exit {rep['exit']}")
    cc = rep["conic_counts"]
    for k, v in (("matchings", 105), ("classical_conics", 2520), ("two_quadrilateral_conics", 630)):
        if cc[k] != v:
            failures.append(f"{k}={cc[k]} (want {v})")
    st = rep["conic_stabilizers"]
    if st["orders"] != {"16": 2520} or st["dihedral"] != 2520:
        failures.append(f"conic stabilizers {st}")
    pc = rep["pencil_counts"]
    if pc["distinct_pencils"] != 28560:
        failures.append(f"distinct pencils={pc['distinct_pencils']} (want 28560)")
    if pc["pencils_per_conic"] != {"34": 2520}:
        failures.append(f"pencils per conic={pc['pencils_per_conic']} (want 34)")
    t1 = next((t for t in rep["pencil_types"]["types"] if t["name"] == "type-1"), None)
    if t1 is None or t1["count"] != 1680 or t1["stabilizer_order"] != 48:
        failures.append("type-1 " + (f"count={t1['count']} stabilizer={t1['stabilizer_order']}"
                                     if t1 else "missing") + " (want 1680, 48)")
    if t1 is None or t1["per_conic"] != {"2": 2520}:
        failures.append(f"type-1 per conic={t1 and t1['per_conic']} (want 2)")
    verdict(6, "octagon conic and pencil census", failures)


def test_criterion_07_common_member_and_conic_net(gen):
    failures = []
    for s in range(50):
        rep = cli("octagon", "verify", "--scene", gen("oct", s), "--statement", "thm5_6")
        if rep["exit"] != 0 or not all(rep["checks"]["thm5_6.cyclic_pairing"].values()):
            failures.append(f"seed {s}: {rep.get('checks')}")
        if "thm5_6.alternate_pairing_common_member" not in rep.get("data", {}):
            failures.append(f"seed {s}: alternate pairing not reported")
    rep = cli("net", "--kind", "conics33", "--scene", gen("oct", 0))
    conds = {k: v for k, v in rep["checks"].items() if k.startswith("conditions.")}
    if rep["exit"] != 0 or not conds or not all(conds.values()) or rep["checks"]["pencil_count"] != 9:
        failures.append(f"net: {rep.get('checks')}")
    verdict(7, "cyclic pairing on 50 seeds and the (3,3) conic net", failures)


def test_criterion_08_decagon(gen):
    failures = []
    for s in range(10):
        rep = cli("octagon", "verify", "--scene", gen("2ngon", s, n=5), "--statement", "2ngon")
        c = rep["checks"]
        if rep["exit"] != 0 or rep["data"]["n"] != 5 or not all(_tally_ok(v) for v in c.values()):
            failures.append(f"seed {s}: {c}")
    verdict(8, "decagon residual cubics and pencil ranks on 10 seeds", failures)


DUALS = {"prop6_1": "tangent-hex", "thm6_2": "tangent-hex", "thm6_3": "tangent-oct",
         "thm6_4": "tangent-oct", "thm6_5": "tangent-oct", "thm6_6": "tangent-oct"}


def test_criterion_09_duals(gen):
    failures = []
    for stmt, kind in DUALS.items():
        for s in range(10):
            rep = cli("dual", "--statement", stmt, "--scene", gen(kind, s))
            if rep["exit"] != 0 or rep["checks"].get(stmt) is not True:
                failures.append(f"{stmt} seed {s}")
    verdict(9, "dual statements on 10 tangent scenes each", failures)


def test_criterion_10_degenerate_cases(gen):
    failures = []
    for stmt in ("prop7_1", "prop7_2", "prop7_3", "prop7_4", "pappus"):
        for s in SEEDS:
            rep = cli("degenerate", "--statement", stmt,
                      "--scene", gen("degenerate", s, statement=stmt))
            if rep["exit"] != 0 or not all(rep["checks"].values()):
                failures.append(f"{stmt} seed {s}: {rep.get('checks')}")
            if stmt == "prop7_1" and rep["checks"].get("prop7_1.limit_monotone") is not True:
                failures.append(f"limit seed {s}")
    verdict(10, "degenerate cases on 25 seeds and the tangent limit", failures)


def test_criterion_11_determinism(gen, oct_census):
    failures = []
    for argv in (["hexagon", "census", "--scene", gen("hex", 3)],
                 ["hexagon", "verify", "--scene", gen("hex", 3), "--trials", 20],
                 ["octagon", "verify", "--scene", gen("oct", 3), "--statement", "all", "--trials", 3],
                 ["degenerate", "--statement", "prop7_1", "--scene", gen("degenerate", 3, statement="prop7_1")]):
        argv = [str(a) for a in argv]
        if capture(argv) != capture(argv):
            failures.append(" ".join(argv[:2]) + " differs between runs")
    code, two = capture(["octagon", "census", "--scene", gen("oct", 0), "--pencils", "--workers", "2"])
    one = {k: v for k, v in oct_census.items() if k != "exit"}
    if code != 0 or json.loads(two) != one:
        failures.append("octagon census differs between 1 and 2 workers")
    verdict(11, "byte-identical reports and worker-count independence", failures)


def test_criterion_12_float_crosscheck(gen, tmp_path):
    found = on_d2 = 0
    failures = []
    jobs = [("hex", s, "residual:AB CD EF|BC DE FA") for s in SEEDS]
    jobs += [("oct", s, "residual:AB CD EF GH|BC DE FG HA") for s in SEEDS]
    for kind, s, overlay in jobs:
        rep = cli("render", "--scene", gen(kind, s), "--overlay", overlay,
                  "--out", tmp_path / f"{kind}{s}.svg")
        if rep["exit"] != 0:
            failures.append(f"{kind} seed {s}: exit {rep['exit']}")
            continue
        for c in rep["crosscheck"]:
            found += c["found"]
            on_d2 += c["on_d2"]
    if not found or on_d2 / found < 0.99:
        failures.append(f"{on_d2}/{found} located points within 1e-9")
    RESULTS_NOTE = f"{on_d2}/{found} points"
    verdict(12, f"float cross-check ({RESULTS_NOTE})", failures)


def test_criterion_02_certificate_soundness():
    # runs last: every report produced above contributes its certificate tally
    issued = sum(r["certificates"]["issued"] for r in REPORTS if "certificates" in r)
    verified = sum(r["certificates"]["verified"] for r in REPORTS if "certificates" in r)
    failures = [] if issued and issued == verified else [f"{verified}/{issued} verified"]
    verdict(2, f"certificate soundness ({verified}/{issued} re-verified)", failures)
