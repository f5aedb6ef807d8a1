from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mysticum.exact_linear import HomoPoly, poly_eval
from mysticum.scene import stream
from mysticum.projective import (UNIT_CIRCLE, Collineation, Conic, DegenerateJoin, GeometryError,
                                 HLine, HPoint, NotOnConic, UnderdeterminedConic, coconic,
                                 collinear, concurrent, conic_through, curves_through, dualize,
                                 join, meet, on_cubic_rank, param_point, tangent_at)

small = st.integers(-12, 12)
pts = st.tuples(small, small, small).filter(any).map(lambda c: HPoint(*c))
params = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def test_join_examples():
    assert join(HPoint(1, 0, 0), HPoint(0, 1, 0)) == HLine(0, 0, 1)
    assert join(HPoint(1, 0, 1), HPoint(0, 1, 1)) == HLine(-1, -1, 1)
    with pytest.raises(DegenerateJoin):
        join(HPoint(1, 2, 3), HPoint(2, 4, 6))


def test_meet_examples():
    assert meet(HLine(1, 0, 0), HLine(0, 1, 0)) == HPoint(0, 0, 1)
    assert meet(HLine(1, 0, -1), HLine(1, 0, -2)) == HPoint(0, 1, 0)
    p, q, r = HPoint(1, 2, 3), HPoint(-1, 0, 4), HPoint(2, 5, -1)
    assert not collinear([p, q, r])
    assert meet(join(p, q), join(p, r)) == p


def test_collinear_and_concurrent_examples():
    assert collinear([HPoint(1, 0, 0), HPoint(0, 1, 0), HPoint(1, 1, 0)])
    assert not collinear([HPoint(1, 0, 0), HPoint(0, 1, 0), HPoint(0, 0, 1)])
    assert concurrent([HLine(1, 0, 0), HLine(0, 1, 0), HLine(1, 1, 0)])
    a, b, c = HPoint(0, 0, 1), HPoint(1, 0, 1), HPoint(0, 1, 1)
    assert not concurrent([join(a, b), join(b, c), join(c, a)])


def test_conic_through_examples():
    five = [param_point(t) for t in (0, 1, -1, 2, 3)]
    assert conic_through(five) == UNIT_CIRCLE
    on_line = [HPoint(t, 0, 1) for t in range(4)] + [HPoint(0, 1, 1)]
    with pytest.raises(UnderdeterminedConic):
        conic_through(on_line)


def test_coconic_examples():
    assert coconic([param_point(t) for t in (0, 1, -1, 2, 3, Fraction(1, 2), -7, 5)])
    six = [param_point(t) for t in (0, 1, -1, 2, 3)] + [HPoint(1, 1, 1)]
    assert not coconic(six)


def test_on_cubic_rank_examples():
    lines = [HLine(1, 2, -3), HLine(0, 1, 4), HLine(5, -1, 1)]
    cubic = lines[0].form() * lines[1].form() * lines[2].form()
    on = [p for l in lines for p in (meet(l, HLine(1, 0, -k)) for k in (7, 8, 9, 10))][:10]
    assert len(set(on)) == 10 and all(poly_eval(cubic, p) == 0 for p in on)
    assert on_cubic_rank(on) <= 9
    rng = stream(11, "generic")
    generic = [HPoint(rng.nonzero_int(50), rng.nonzero_int(50), rng.nonzero_int(50)) for _ in range(10)]
    assert on_cubic_rank(generic) == 10


def test_tangent_examples():
    assert tangent_at(UNIT_CIRCLE, HPoint(1, 0, 1)) == HLine(1, 0, -1)
    assert tangent_at(UNIT_CIRCLE, HPoint(0, 1, 1)) == HLine(0, 1, -1)
    with pytest.raises(NotOnConic):
        tangent_at(UNIT_CIRCLE, HPoint(1, 1, 1))


def test_param_point_examples():
    assert param_point(0) == HPoint(1, 0, 1)
    assert param_point(1) == HPoint(0, 1, 1)
    assert param_point(Fraction(1, 2)) == HPoint(3, 4, 5)


def test_dualize_examples():
    assert dualize(HPoint(1, 2, 3)) == HLine(1, 2, 3)
    assert dualize(UNIT_CIRCLE) == UNIT_CIRCLE
    c = Conic(HomoPoly(2, (2, 1, 0, 3, -1, -5)))
    assert not c.is_degenerate()
    assert dualize(dualize(c)) == c


@given(pts, pts)
def test_join_contains_both_points(p, q):
    assume(p != q)
    l = join(p, q)
    assert l.contains(p) and l.contains(q)


@given(params)
def test_param_points_lie_on_circle_and_tangent_touches(t):
    p = param_point(t)
    assert UNIT_CIRCLE.contains(p)
    l = tangent_at(UNIT_CIRCLE, p)
    assert l.contains(p) and dualize(UNIT_CIRCLE).contains(dualize(l))


@given(st.lists(params, min_size=5, max_size=5, unique=True))
def test_five_circle_points_determine_the_circle(ts):
    assert conic_through([param_point(t) for t in ts]) == UNIT_CIRCLE


collineations = st.lists(small, min_size=9, max_size=9).map(
    lambda v: [v[0:3], v[3:6], v[6:9]])


@given(collineations, pts, pts, pts)
def test_incidence_is_projectively_invariant(m, p, q, r):
    try:
        t = Collineation(m)
    except GeometryError:
        assume(False)
    assume(len({p, q, r}) == 3)
    assert collinear([p, q, r]) == collinear([t(p), t(q), t(r)])
    l = join(p, q)
    assert t(l) == join(t(p), t(q))


@given(collineations, st.lists(params, min_size=6, max_size=6, unique=True))
def test_conic_membership_is_projectively_invariant(m, ts):
    try:
        t = Collineation(m)
    except GeometryError:
        assume(False)
    image = t(UNIT_CIRCLE)
    assert all(image.contains(t(param_point(s))) for s in ts)
    assert isinstance(image, Conic) and not image.is_degenerate()


def test_curves_through_has_expected_dimension():
    six = [param_point(t) for t in (0, 1, -1, 2, 3, Fraction(1, 2))]
    assert len(curves_through(six, 3)) == 4
    assert len(curves_through(six, 2)) == 1
