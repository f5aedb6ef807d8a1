import numpy as np
import pytest

from mysticum.decomposition import residual_curve
from mysticum.hexagon import classical_pascal_line, hex_orderings
from mysticum.octagon import cycle_matchings, mystic_certificate
from mysticum.projective import HLine, join, meet
from mysticum.render import (Overlay, float_crosscheck, relative_residual, render_scene,
                             residual_points_float)

WIDE = (-1e4, 1e4, -1e4, 1e4)


def test_empty_scene_draws_axes_only():
    svg = render_scene(None)
    assert svg.count('class="axes"') == 2
    assert "<polyline" not in svg and "<circle" not in svg


def test_sixty_pascal_lines_are_drawn(hexs):
    lines = [classical_pascal_line(hexs, o) for o in hex_orderings()]
    assert len(set(lines)) == 60
    svg = render_scene(hexs.scene, [Overlay(l, "pascal") for l in lines], viewport=WIDE)
    assert svg.count('class="pascal"') == 60
    assert svg.count('class="point"') == 6


def test_render_is_byte_identical(hexs):
    lines = [classical_pascal_line(hexs, o) for o in hex_orderings()[:10]]
    a = render_scene(hexs.scene, [Overlay(l) for l in lines], title="t")
    b = render_scene(hexs.scene, [Overlay(l) for l in lines], title="t")
    assert a == b


def test_pascal_meets_lie_on_the_float_line(hexs):
    s = hexs.scene
    line = classical_pascal_line(hexs, "ABCDEF")
    pairs = (("AB", "DE"), ("BC", "EF"), ("CD", "FA"))
    v = np.array([float(c) for c in line.coeffs])
    for e, f in pairs:
        p = meet(join(s[e[0]], s[e[1]]), join(s[f[0]], s[f[1]]))
        x = np.array([float(c) for c in p.coords])
        assert abs(v @ x) <= 1e-9 * np.linalg.norm(v) * np.linalg.norm(x)


def test_octagon_residual_points_lie_on_both_curves(octs):
    m1, m2 = cycle_matchings("ABCDEFGH")
    cert = mystic_certificate(octs, octs.edge_form(m1), octs.edge_form(m2))
    pts = residual_points_float(cert.d1, cert.d2, cert)
    assert pts
    for p in pts:
        assert relative_residual(cert.residual, p) <= 1e-9
        assert relative_residual(cert.d2, p) <= 1e-9
    found, on_d2 = float_crosscheck(cert)
    assert found == on_d2 == len(pts)


def test_hexagon_residual_line_points(hexs):
    cert = residual_curve(hexs.cubic("AB CD EF"), hexs.cubic("BC DE FA"), hexs.scene.conic,
                          list(hexs.scene.points.values()))
    assert HLine(cert.residual.coeffs) == classical_pascal_line(hexs, "ABCDEF")
    found, on_d2 = float_crosscheck(cert)
    assert found == on_d2 == 3


def test_locating_without_a_certificate_is_refused(hexs):
    with pytest.raises(ValueError):
        residual_points_float(hexs.cubic("AB CD EF"), hexs.cubic("BC DE FA"), None)
