from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mysticum.exact_linear import (HomoPoly, NotDivisible, canonical, determinant, monomials,
                                   nullspace, poly_eval, poly_mul, poly_quotient, product, rank,
                                   rat_from_str, rat_to_str, solve, stacked_rank)
from mysticum.projective import UNIT_CIRCLE, HLine, evaluation_matrix, join, param_point
from mysticum.scene import hex_scene, stream

ints = st.integers(-20, 20)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def leibniz(m):
    """Determinant by permutation expansion (independent oracle)."""
    n = len(m)
    total = Fraction(0)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[1, 2, 3], [1, 2, 3]]) == 1


def test_conic_evaluation_matrix_of_six_points_has_full_rank():
    pts = [param_point(t) for t in (Fraction(1, 3), 2, -5, Fraction(7, 2), 0, -1)]
    m = evaluation_matrix(pts, 2)
    # on a conic, so the 6x6 determinant vanishes; perturb one point off it
    assert leibniz(m) == 0 and rank(m) == 5
    m2 = evaluation_matrix(pts[:5] + [param_point(3).coords[:2] + (2,)], 2)
    assert leibniz(m2) != 0 and rank(m2) == 6


def test_nullspace_examples():
    assert sorted(nullspace([[1, 0, 0]])) == [(0, 0, 1), (0, 1, 0)]
    assert nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    pts = [param_point(t) for t in (0, 1, -1, 2, 3)]
    (v,) = nullspace(evaluation_matrix(pts, 2))
    assert canonical(v) == UNIT_CIRCLE.coeffs


def test_poly_mul_examples():
    x = HomoPoly(1, (1, 0, 0))
    y = HomoPoly(1, (0, 1, 0))
    z = HomoPoly(1, (0, 0, 1))
    xy = poly_mul(x, y)
    assert xy.coeffs[monomials(2).index((1, 1, 0))] == 1 and sum(xy.coeffs) == 1
    assert poly_mul(x + z, x - z) == HomoPoly.from_terms(2, {(2, 0, 0): 1, (0, 0, 2): -1})


def test_product_of_hexagon_lines_matches_pointwise_products():
    s = hex_scene(7)
    lines = [join(s["A"], s["B"]), join(s["C"], s["D"]), join(s["E"], s["F"])]
    f = product(l.form() for l in lines)
    rng = stream(7, "probe")
    for _ in range(20):
        p = (rng.rational(), rng.rational(), rng.rational())
        expected = Fraction(1)
        for l in lines:
            expected *= poly_eval(l.form(), p)
        assert poly_eval(f, p) == expected


def test_exact_division_examples():
    x2_z2 = HomoPoly.from_terms(2, {(2, 0, 0): 1, (0, 0, 2): -1})
    x_z = HomoPoly(1, (1, 0, -1))
    assert poly_quotient(x2_z2, x_z) == HomoPoly(1, (1, 0, 1))
    line = HLine(3, -7, 2).form()
    assert poly_quotient(poly_mul(UNIT_CIRCLE.form, line), UNIT_CIRCLE.form) == line
    with pytest.raises(NotDivisible):
        poly_quotient(HomoPoly.from_terms(3, {(3, 0, 0): 1}), HomoPoly(1, (0, 1, 0)))


def test_eval_examples():
    c = UNIT_CIRCLE.form
    assert poly_eval(c, (3, 4, 5)) == 0
    assert poly_eval(HomoPoly(1, (1, 0, 0)), (0, 1, 0)) == 0
    assert poly_eval(c, (1, 1, 1)) == 1


def test_rational_string_round_trip():
    for v in (Fraction(-3, 7), Fraction(5), Fraction(0)):
        assert rat_from_str(rat_to_str(v)) == v


@given(matrices)
def test_rank_plus_nullity_is_column_count(m):
    assert rank(m) + len(nullspace(m)) == len(m[0])


@given(matrices)
def test_nullspace_vectors_are_annihilated(m):
    for v in nullspace(m):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_determinant_matches_leibniz(m):
    assert determinant(m) == leibniz(m)


@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(ints, min_size=3, max_size=3))
def test_solve_satisfies_system(m, rhs):
    x = solve(m, rhs)
    if x is None:
        assert rank(m) < rank([row + [b] for row, b in zip(m, rhs)])
    else:
        assert [sum(a * b for a, b in zip(row, x)) for row in m] == [Fraction(b) for b in rhs]


def forms(d):
    return st.lists(ints, min_size=(d + 1) * (d + 2) // 2,
                    max_size=(d + 1) * (d + 2) // 2).map(lambda cs: HomoPoly(d, cs))


points = st.tuples(ints, ints, ints)


@settings(max_examples=60)
@given(forms(2), forms(3), points)
def test_product_evaluates_pointwise(f, g, p):
    assert poly_eval(poly_mul(f, g), p) == poly_eval(f, p) * poly_eval(g, p)


@settings(max_examples=60)
@given(forms(2), forms(2))
def test_division_inverts_multiplication(f, g):
    if g.is_zero():
        return
    assert poly_quotient(poly_mul(f, g), g) == f


@given(forms(2), forms(2))
def test_stacked_rank_bounds(f, g):
    r = stacked_rank([f, g, f + g])
    assert r <= 2
    assert r == rank([f.coeffs, g.coeffs])
