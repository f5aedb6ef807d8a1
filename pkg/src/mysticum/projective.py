"""Points, lines and conics of the rational projective plane."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact_linear import (HomoPoly, Rat, canonical, determinant, evaluation_row,
                           nullspace, poly_eval, rank, rat)


class GeometryError(ValueError):
    """Base class for failed geometric preconditions."""


class DegenerateJoin(GeometryError):
    pass


class DegenerateMeet(GeometryError):
    pass


class UnderdeterminedConic(GeometryError):
    pass


class NotOnConic(GeometryError):
    pass


class SingularPoint(GeometryError):
    pass


class DegenerateConicDual(GeometryError):
    pass


def _cross(a, b) -> tuple:
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


@dataclass(frozen=True, order=True, init=False)
class HPoint:
    """Projective point stored as its canonical primitive integer triple."""

    coords: tuple

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("a projective point needs three coordinates")
        try:
            object.__setattr__(self, "coords", canonical(coords))
        except ValueError:
            raise GeometryError("(0, 0, 0) is not a projective point") from None

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return f"HPoint{self.coords}"

    def affine(self) -> tuple[float, float] | None:
        x, y, z = self.coords
        if z == 0:
            return None
        return x / z, y / z


@dataclass(frozen=True, order=True, init=False)
class HLine:
    """Projective line ``a x + b y + c z = 0``, canonical like :class:`HPoint`."""

    coeffs: tuple

    def __init__(self, *coeffs):
        if len(coeffs) == 1:
            coeffs = tuple(coeffs[0])
        if len(coeffs) != 3:
            raise ValueError("a projective line needs three coefficients")
        try:
            object.__setattr__(self, "coeffs", canonical(coeffs))
        except ValueError:
            raise GeometryError("[0, 0, 0] is not a projective line") from None

    @property
    def coords(self):
        return self.coeffs

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __repr__(self):
        return f"HLine{list(self.coeffs)}"

    def form(self) -> HomoPoly:
        return HomoPoly(1, self.coeffs)

    def contains(self, p: HPoint) -> bool:
        return sum(a * b for a, b in zip(self.coeffs, p.coords)) == 0


def _sym(m) -> list[list[Rat]]:
    return [[rat(v) for v in row] for row in m]


class Conic:
    """Conic as a degree-2 form, with a symmetric 3x3 matrix view.

    The form is kept in canonical primitive integer shape, so two conics are
    equal iff their zero sets are (for non-degenerate conics).
    """

    __slots__ = ("form",)

    def __init__(self, form: Union[HomoPoly, Sequence]):
        if not isinstance(form, HomoPoly):
            form = HomoPoly(2, form)
        if form.degree != 2:
            raise ValueError("a conic is a degree-2 form")
        if form.is_zero():
            raise GeometryError("the zero form is not a conic")
        self.form = form.canonical()

    @classmethod
    def from_matrix(cls, m) -> "Conic":
        m = _sym(m)
        if any(m[i][j] != m[j][i] for i in range(3) for j in range(3)):
            raise ValueError("conic matrix must be symmetric")
        return cls(HomoPoly(2, (m[0][0], 2 * m[0][1], 2 * m[0][2],
                                m[1][1], 2 * m[1][2], m[2][2])))

    @property
    def coeffs(self):
        return self.form.coeffs

    @property
    def matrix(self) -> list[list[Rat]]:
        a, b, c, d, e, f = self.form.coeffs
        h = Fraction(1, 2)
        return _sym([[a, b * h, c * h], [b * h, d, e * h], [c * h, e * h, f]])

    def det(self) -> Rat:
        return determinant(self.matrix)

    def is_degenerate(self) -> bool:
        return self.det() == 0

    def __call__(self, p) -> Rat:
        return poly_eval(self.form, p)

    def contains(self, p) -> bool:
        return self(p) == 0

    def __eq__(self, other):
        return isinstance(other, Conic) and self.form == other.form

    def __hash__(self):
        return hash(("Conic", self.form.coeffs))

    def __lt__(self, other):
        return self.form.coeffs < other.form.coeffs

    def __repr__(self):
        return f"Conic({list(self.form.coeffs)})"


UNIT_CIRCLE = Conic(HomoPoly(2, (1, 0, 0, 1, 0, -1)))


# --- joins, meets, incidence ---------------------------------------------


def join(p: HPoint, q: HPoint) -> HLine:
    """Line through two distinct points."""
    c = _cross(p.coords, q.coords)
    if not any(c):
        raise DegenerateJoin(f"join of coincident points {p}")
    return HLine(c)


def meet(l: HLine, m: HLine) -> HPoint:
    """Common point of two distinct lines."""
    c = _cross(l.coeffs, m.coeffs)
    if not any(c):
        raise DegenerateMeet(f"meet of coincident lines {l}")
    return HPoint(c)


def incident(p: HPoint, l: HLine) -> bool:
    return l.contains(p)


def collinear(points: Sequence[HPoint]) -> bool:
    if len(points) < 3:
        raise ValueError("collinearity needs at least three points")
    return rank([p.coords for p in points]) <= 2


def concurrent(lines: Sequence[HLine]) -> bool:
    if len(lines) < 3:
        raise ValueError("concurrency needs at least three lines")
    return rank([l.coeffs for l in lines]) <= 2


def evaluation_matrix(points: Sequence, d: int) -> list[list[Rat]]:
    return [evaluation_row(getattr(p, "coords", p), d) for p in points]


def curves_through(points: Sequence, d: int) -> list[HomoPoly]:
    """Basis of degree-``d`` forms vanishing at every point."""
    return [HomoPoly(d, v) for v in nullspace(evaluation_matrix(points, d))]


def conic_through(points: Sequence[HPoint]) -> Conic:
    """The unique conic through five points."""
    if len(points) != 5:
        raise ValueError("conic_through takes exactly five points")
    m = evaluation_matrix(points, 2)
    if rank(m) < 5:
        raise UnderdeterminedConic("five points do not determine a unique conic")
    (v,) = nullspace(m)
    return Conic(HomoPoly(2, v))


def coconic(points: Sequence[HPoint]) -> bool:
    if len(points) < 6:
        raise ValueError("coconic needs at least six points")
    return rank(evaluation_matrix(points, 2)) <= 5


def on_cubic_rank(points: Sequence[HPoint]) -> int:
    """Rank of the degree-3 evaluation matrix (<= 9 iff a cubic passes through all)."""
    if len(points) < 10:
        raise ValueError("on_cubic_rank needs at least ten points")
    return rank(evaluation_matrix(points, 3))


def tangent_at(c: Conic, p: HPoint) -> HLine:
    if not c.contains(p):
        raise NotOnConic(f"{p} is not on {c}")
    g = c.form.gradient(p)
    if not any(g):
        raise SingularPoint(f"{p} is a singular point of {c}")
    return HLine(g)


def param_point(t) -> HPoint:
    """Rational parameterization of the unit circle; ``None`` means infinity."""
    if t is None or (isinstance(t, float) and t == float("inf")) or t == "inf":
        return HPoint(-1, 0, 1)
    t = rat(t)
    return HPoint(1 - t * t, 2 * t, 1 + t * t)


def conic_point(c: Conic, base: HPoint, direction) -> HPoint:
    """Second intersection of ``c`` with the line through ``base`` and ``direction``.

    Returns ``base`` itself when the line is tangent there.
    """
    r = HPoint(direction).coords
    m = c.matrix
    b = sum(base.coords[i] * m[i][j] * r[j] for i in range(3) for j in range(3))
    cr = c(r)
    return HPoint([cr * base.coords[i] - 2 * b * r[i] for i in range(3)])


# --- duality and collineations -------------------------------------------


def adjugate(m) -> list[list[Rat]]:
    m = _sym(m)
    return [[rat(m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
                  - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3])
             for j in range(3)] for i in range(3)]


def dualize(obj):
    """Standard coordinate duality: points <-> lines, conics -> adjugate conics."""
    if isinstance(obj, HPoint):
        return HLine(obj.coords)
    if isinstance(obj, HLine):
        return HPoint(obj.coeffs)
    if isinstance(obj, Conic):
        if obj.is_degenerate():
            raise DegenerateConicDual(f"{obj} is degenerate")
        return Conic.from_matrix(adjugate(obj.matrix))
    raise TypeError(f"cannot dualize {type(obj).__name__}")


def _matvec(m, v):
    return [sum(m[i][j] * v[j] for j in range(3)) for i in range(3)]


def _transpose(m):
    return [[m[j][i] for j in range(3)] for i in range(3)]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


class Collineation:
    """Projective change of coordinates ``p -> T p``."""

    def __init__(self, matrix):
        self.matrix = _sym(matrix)
        if determinant(self.matrix) == 0:
            raise GeometryError("singular collineation")
        self._adj = adjugate(self.matrix)  # proportional to the inverse

    def __call__(self, obj):
        if isinstance(obj, HPoint):
            return HPoint(_matvec(self.matrix, obj.coords))
        if isinstance(obj, HLine):
            # l' = T^{-T} l
            return HLine(_matvec(_transpose(self._adj), obj.coeffs))
        if isinstance(obj, Conic):
            return Conic.from_matrix(_matmul(_matmul(_transpose(self._adj), obj.matrix), self._adj))
        if isinstance(obj, HomoPoly):
            return obj.substitute(self._adj).canonical()
        raise TypeError(f"cannot transform {type(obj).__name__}")


def point_on_line(l: HLine, s) -> HPoint:
    """Point of ``l`` for parameter ``s`` (two fixed points on the line, mixed)."""
    a, b, c = l.coeffs
    basis = [(b, -a, 0), (c, 0, -a), (0, c, -b)]
    pts = [v for v in basis if any(v)]
    p, q = pts[0], next(v for v in pts[1:] if any(_cross(pts[0], v)))
    s = rat(s)
    return HPoint([p[i] + s * q[i] for i in range(3)])
