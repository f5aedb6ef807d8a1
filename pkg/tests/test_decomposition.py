import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mysticum.decomposition import (BasePointError, DependentCurves, SharedComponent,
                                    aux_parameters, common_member, in_pencil, pencil_of,
                                    recording, residual_curve)
from mysticum.exact_linear import HomoPoly, poly_mul, product
from mysticum.hexagon import classical_pascal_line, random_cubic_through
from mysticum.octagon import classical_conic, cycle_matchings, random_quartic_through, residual_meets
from mysticum.projective import UNIT_CIRCLE, HLine, coconic, curves_through, join
from mysticum.scene import inscribed_scene, stream


def x2(): return HomoPoly.from_terms(2, {(2, 0, 0): 1})
def y2(): return HomoPoly.from_terms(2, {(0, 2, 0): 1})
def z2(): return HomoPoly.from_terms(2, {(0, 0, 2): 1})
def xz(): return HomoPoly.from_terms(2, {(1, 0, 1): 1})


def test_aux_walk_is_the_primes():
    assert list(itertools.islice(aux_parameters(), 6)) == [2, 3, 5, 7, 11, 13]


def test_pascal_residual_is_the_classical_line(hexs):
    d1 = hexs.cubic("AB DE CF")
    d2 = hexs.cubic("BC EF AD")
    cert = residual_curve(d1, d2, hexs.conic, hexs.vertices)
    assert cert.verify()
    # these cubics alternate around the hexagon A-B-C-F-E-D
    assert HLine(cert.residual.coeffs) == classical_pascal_line(hexs, "ABCFED")
    plain = residual_curve(hexs.cubic("AB CD EF"), hexs.cubic("BC DE AF"), hexs.conic, hexs.vertices)
    assert HLine(plain.residual.coeffs) == classical_pascal_line(hexs, "ABCDEF")


def test_shared_line_factor_is_rejected(hexs):
    shared = hexs.line("AB").form()
    d1 = product([shared, hexs.line("CD").form(), hexs.line("EF").form()])
    d2 = product([shared, hexs.line("CE").form(), hexs.line("DF").form()])
    with pytest.raises(SharedComponent):
        residual_curve(d1, d2, hexs.conic, hexs.vertices)


def test_equal_curves_are_dependent(hexs):
    d = hexs.cubic("AB CD EF")
    with pytest.raises(DependentCurves):
        residual_curve(d, d.scale(3), hexs.conic, hexs.vertices)


def test_missing_base_points_are_rejected(hexs):
    with pytest.raises(BasePointError):
        residual_curve(hexs.cubic("AB CD EF"), hexs.cubic("BC DE AF"), hexs.conic, hexs.vertices[:5])


def test_octagon_residual_conic_contains_the_eight_meets(octs):
    m1, m2 = cycle_matchings("ABCDEFGH")
    cert = residual_curve(octs.edge_form(m1), octs.edge_form(m2), octs.conic, octs.vertices)
    meets = residual_meets(octs, m1, m2)
    assert cert.verify() and len(meets) == 8
    assert coconic(meets)
    assert all(cert.residual(p) == 0 for p in meets)
    assert cert.residual == classical_conic(octs, "ABCDEFGH").form


def test_recording_collects_certificates(hexs):
    with recording() as log:
        residual_curve(hexs.cubic("AB DE CF"), hexs.cubic("BC EF AD"), hexs.conic, hexs.vertices)
    assert len(log) == 1 and log[0].verify()


def test_pencil_examples():
    p = pencil_of(x2(), y2())
    assert p.forms == (x2(), y2())
    with pytest.raises(DependentCurves):
        pencil_of(x2(), x2().scale(2))
    f, g = x2() + xz(), y2().scale(3) + z2()
    assert pencil_of(f, g) == pencil_of(g, f + g)
    assert in_pencil(p.forms[0] + p.forms[1], p)
    zz = pencil_of(x2(), y2())
    assert not in_pencil(z2(), zz)


def test_common_member_examples():
    assert common_member([pencil_of(x2(), y2()), pencil_of(y2(), z2())]).canonical() == y2()
    assert common_member([pencil_of(x2(), y2()), pencil_of(xz(), z2())]) is None


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_certificate_soundness_and_aux_independence(seed):
    s = inscribed_scene(6, seed)
    pts = list(s.points.values())
    d1 = random_cubic_through(s, "p1")
    d2 = random_cubic_through(s, "p2", [d1])
    a = residual_curve(d1, d2, s.conic, pts)
    b = residual_curve(d1, d2, s.conic, pts, aux=[97, 101, 103])
    assert a.verify() and b.verify()
    assert a.residual == b.residual and a.aux_param != b.aux_param


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_residual_of_conic_times_line(seed):
    s = inscribed_scene(6, seed)
    pts = list(s.points.values())
    rng = stream(seed, "line")
    line = HLine(rng.nonzero_int(9), rng.nonzero_int(9), rng.nonzero_int(9))
    if any(line.contains(p) for p in pts):
        return
    d1 = product(join(pts[i], pts[i + 1]).form() for i in (0, 2, 4))
    d2 = poly_mul(UNIT_CIRCLE.form, line.form())
    cert = residual_curve(d1, d2, s.conic, pts)
    assert cert.verify() and cert.residual.degree == 1


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_mystic_conic_triples_span_one_pencil(seed):
    s = inscribed_scene(8, seed)
    pts = list(s.points.values())
    rng = stream(seed, "quartics")
    from mysticum.octagon import OctScene
    o = OctScene(s)
    qs = [random_quartic_through(o, rng) for _ in range(3)]
    rs = [residual_curve(a, b, s.conic, pts).residual for a, b in itertools.combinations(qs, 2)]
    assert in_pencil(rs[2], pencil_of(rs[0], rs[1]))


def test_basis_of_curves_through_scene_matches_dimension():
    s = inscribed_scene(8, 1)
    assert len(curves_through(list(s.points.values()), 4)) == 7
