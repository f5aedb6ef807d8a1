import json

import pytest

from mysticum.cli import capture, execute


@pytest.fixture(scope="module")
def scenes(tmp_path_factory):
    d = tmp_path_factory.mktemp("scenes")
    out = {}
    for kind in ("hex", "oct", "tangent-hex", "tangent-oct"):
        path = d / f"{kind}.json"
        code, rep = execute(["gen", "--kind", kind, "--seed", "5", "--out", str(path)])
        assert code == 0, rep
        out[kind] = str(path)
    return out


def test_hexagon_census_passes(scenes):
    code, rep = execute(["hexagon", "census", "--scene", scenes["hex"]])
    assert code == 0 and rep["status"] == "pass"
    assert rep["counts"]["pascal_lines"] == 60
    assert rep["certificates"]["issued"] == rep["certificates"]["verified"] > 0


def test_hexagon_verify_single_statement(scenes):
    code, rep = execute(["hexagon", "verify", "--scene", scenes["hex"], "--statement", "thm3_1",
                         "--trials", "5"])
    assert code == 0 and rep["status"] == "pass"


def test_octagon_verify_thm5_6(scenes):
    code, rep = execute(["octagon", "verify", "--scene", scenes["oct"], "--statement", "thm5_6",
                         "--trials", "2"])
    assert code == 0, rep["diff"]


def test_reports_are_deterministic(scenes):
    argv = ["hexagon", "verify", "--scene", scenes["hex"], "--statement", "thm3_3", "--trials", "4"]
    assert capture(argv) == capture(argv)


def test_malformed_scene_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"seed": 1, "points": {"A": [1, 0]}}')
    code, rep = execute(["hexagon", "census", "--scene", str(bad)])
    assert code == 2 and rep["error"] == "scene_format"
    code, _ = execute(["hexagon", "census", "--scene", str(tmp_path / "missing.json")])
    assert code == 2


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["hexagon", "verify"],
                                  ["stabilizer", "--which", "pencil", "--id", "AB CD EF GH"]])
def test_usage_errors_exit_2(argv):
    code, _ = execute(argv)
    assert code == 2


def test_wrong_polygon_for_dual_is_a_precondition_error(scenes):
    code, rep = execute(["dual", "--statement", "thm6_4", "--scene", scenes["tangent-hex"]])
    assert code == 2


def test_stabilizer_of_a_conic():
    code, rep = execute(["stabilizer", "--which", "conic", "--id", "ABCDEFGH"])
    assert code == 0
    assert rep["order"] == 16 and rep["dihedral_generators"] == rep["generators"]


def test_dual_and_degenerate_commands(scenes, tmp_path):
    code, _ = execute(["dual", "--statement", "thm6_5", "--scene", scenes["tangent-oct"]])
    assert code == 0
    path = tmp_path / "p.json"
    execute(["gen", "--kind", "degenerate", "--statement", "pappus", "--seed", "2", "--out", str(path)])
    code, rep = execute(["degenerate", "--statement", "pappus", "--scene", str(path)])
    assert code == 0 and rep["status"] == "pass"


def test_render_writes_svg(scenes, tmp_path):
    svg = tmp_path / "h.svg"
    code, rep = execute(["render", "--scene", scenes["hex"], "--overlay", "pascal",
                         "--out", str(svg)])
    assert code == 0
    assert svg.read_text().count('class="pascal"') == rep["elements"]["line"] - 2  # two axes


def test_json_file_holds_the_report(scenes, tmp_path):
    out = tmp_path / "r.json"
    code, rep = execute(["net", "--kind", "conics33", "--scene", scenes["oct"], "--json", str(out)])
    assert code == 0
    saved = json.loads(out.read_text())
    assert saved["status"] == rep["status"] == "pass"
