import pytest

from mysticum.dual_degenerate import (DUAL_STATEMENTS, STAR_OCTAGON, TangentScene,
                                      degenerate_scene, pentagon_limit, tangency_constrained_curve,
                                      tangent_residual, tangent_scene, thm6_3, verify_degenerate,
                                      verify_dual)
from mysticum.exact_linear import monomials
from mysticum.projective import (UNIT_CIRCLE, Conic, GeometryError, dualize, param_point,
                                 tangent_at)
from mysticum.scene import inscribed_scene


@pytest.mark.parametrize("statement", sorted(DUAL_STATEMENTS))
@pytest.mark.parametrize("seed", [0, 1])
def test_dual_statements_hold(statement, seed):
    n, _ = DUAL_STATEMENTS[statement]
    assert verify_dual(statement, tangent_scene(n, seed))


def test_dual_statement_rejects_wrong_polygon():
    with pytest.raises(ValueError):
        verify_dual("thm6_4", tangent_scene(6, 0))


def test_star_ordering_is_the_default_for_thm6_3():
    s = tangent_scene(8, 4)
    assert thm6_3(s) and thm6_3(s, STAR_OCTAGON)
    # a generic re-joining is not coconic
    assert not thm6_3(s, "ACBDEFGH")


def test_equal_tangency_parameters_are_rejected():
    with pytest.raises(GeometryError):
        tangent_scene(6, 0, params=[0, 1, 2, 3, 4, 4])


def test_tangent_scene_round_trips_through_the_dual():
    s = tangent_scene(6, 2)
    back = TangentScene.from_inscribed(s.dual())
    assert back.sides == s.sides
    assert all(dualize(dualize(v)) == v for v in s.vertices)


def _grad(f, p):
    out = []
    for k in range(3):
        total = 0
        for m, c in zip(monomials(f.degree), f.coeffs):
            if m[k] == 0:
                continue
            e = list(m)
            e[k] -= 1
            term = c * m[k]
            for x, y in zip(p.coords, e):
                term *= x ** y
            total += term
        out.append(total)
    return out


def test_tangency_constrained_cubics_touch_the_line():
    pts = [param_point(t) for t in (1, 2, 3, 5)]
    a = param_point(0)
    tan = tangent_at(UNIT_CIRCLE, a)
    basis = tangency_constrained_curve(pts, [(a, tan)], 3)
    assert len(basis) == 4
    for f in basis:
        assert f(a) == 0
        g = _grad(f, a)
        l = tan.coeffs
        assert all(g[i] * l[j] - g[j] * l[i] == 0 for i in range(3) for j in range(3))


def test_three_points_and_a_tangency_give_the_circle():
    pts = [param_point(t) for t in (1, 2, 3)]
    a = param_point(-1)
    (f,) = tangency_constrained_curve(pts, [(a, tangent_at(UNIT_CIRCLE, a))], 2)
    assert Conic(f) == UNIT_CIRCLE


@pytest.mark.parametrize("statement", ["prop7_1", "prop7_2", "prop7_3", "prop7_4", "pappus"])
@pytest.mark.parametrize("seed", range(3))
def test_degenerate_statements_hold(statement, seed):
    assert verify_degenerate(statement, degenerate_scene(statement, seed))


def test_tangent_residual_degrees():
    assert tangent_residual(inscribed_scene(5, 1), 3).residual.degree == 1
    assert tangent_residual(inscribed_scene(7, 1), 4).residual.degree == 2


def test_pentagon_limit_is_monotone():
    rep = pentagon_limit(3)
    errs = [rep.errors[n] for n in (10, 100, 1000)]
    assert rep.monotone and errs[-1] < errs[0] / 50
