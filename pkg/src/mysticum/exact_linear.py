"""Exact rational linear algebra and homogeneous ternary forms.

Scalars are ``int`` or :class:`fractions.Fraction`; integral values are kept
as plain ``int`` so that the common case (primitive integer vectors) runs at
integer speed.  Rank and nullspace use fraction-free (Bareiss) elimination.

Monomials of degree ``d`` are ordered graded-lexicographically with
``x > y > z``.  For the degrees used in this package the tables are::

    d=1: x, y, z
    d=2: x^2, xy, xz, y^2, yz, z^2
    d=3: x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3
    d=4: x^4, x^3y, x^3z, x^2y^2, x^2yz, x^2z^2, xy^3, xy^2z, xyz^2, xz^3,
         y^4, y^3z, y^2z^2, yz^3, z^4
    d=5: x^5, x^4y, x^4z, x^3y^2, x^3yz, x^3z^2, x^2y^3, x^2y^2z, x^2yz^2,
         x^2z^3, xy^4, xy^3z, xy^2z^2, xyz^3, xz^4, y^5, y^4z, y^3z^2,
         y^2z^3, yz^4, z^5
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union

Rat = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial quotient does not exist."""


def rat(value) -> Rat:
    """Coerce ``value`` to an exact scalar; integral values become ``int``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rat(Fraction(value))
    if isinstance(value, Rational):
        return rat(Fraction(value.numerator, value.denominator))
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_to_str(value: Rat) -> str:
    """Serialize as ``"p/q"`` (``"p"`` when the denominator is 1)."""
    value = rat(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def rat_from_str(text: str) -> Rat:
    if not isinstance(text, str):
        raise TypeError(f"rational must be serialized as a string, got {text!r}")
    return rat(Fraction(text))


def canonical(vec: Sequence) -> tuple[int, ...]:
    """Primitive integer representative with positive leading nonzero entry."""
    vals = [rat(v) for v in vec]
    den = 1
    for v in vals:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        raise ValueError("the zero vector has no canonical form")
    lead = next(v for v in ints if v)
    if lead < 0:
        g = -g
    return tuple(v // g for v in ints)


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        vals = [rat(v) for v in row]
        den = 1
        for v in vals:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        out.append([int(v * den) for v in vals])
    return out


class RatMatrix:
    """Dense row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(rat(v) for v in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [v for r in rows for v in r])

    def row(self, i: int) -> tuple[Rat, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Rat]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self.entries[r * self.cols + c]
                          for c in range(self.cols) for r in range(self.rows)])

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"


MatrixLike = Union[RatMatrix, Sequence[Sequence]]


def _as_rows(m: MatrixLike) -> list[list]:
    if isinstance(m, RatMatrix):
        return m.to_rows()
    return [list(r) for r in m]


def bareiss_echelon(rows: MatrixLike) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the reduced integer rows (only the first ``len(pivots)`` are
    meaningful) and the pivot column indices.
    """
    a = _integer_rows(_as_rows(rows))
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if k is None:
            continue
        if k != r:
            a[r], a[k] = a[k], a[r]
        piv = a[r][c]
        pr = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            # Sylvester identity keeps every division exact
            a[i] = [(piv * ai[j] - f * pr[j]) // prev for j in range(ncols)]
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: MatrixLike) -> int:
    """Exact rank over the rationals."""
    rows = _as_rows(m)
    if not rows or not rows[0]:
        return 0
    return len(bareiss_echelon(rows)[1])


def nullspace(m: MatrixLike) -> list[tuple[int, ...]]:
    """Basis of the right kernel, one canonical vector per free column.

    Vectors are ordered by their free column, ascending.
    """
    rows = _as_rows(m)
    if isinstance(m, RatMatrix):
        ncols = m.cols
    else:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [canonical([1 if j == i else 0 for j in range(ncols)]) for i in range(ncols)]
    ech, pivots = bareiss_echelon(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x: list[Rat] = [0] * ncols
        x[f] = 1
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = ech[i]
            s = 0
            for j in range(pc + 1, ncols):
                if row[j] and x[j]:
                    s += row[j] * x[j]
            x[pc] = Fraction(-s, row[pc]) if s else 0
        basis.append(canonical(x))
    return basis


def solve(m: MatrixLike, rhs: Sequence) -> list[Rat] | None:
    """A particular solution of ``m @ x = rhs``, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    rows = _as_rows(m)
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = bareiss_echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x: list[Rat] = [0] * ncols
    for i in range(len(pivots) - 1, -1, -1):
        pc = pivots[i]
        row = ech[i]
        s = row[ncols]
        for j in range(pc + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[pc] = rat(Fraction(s) / row[pc])
    return x


def determinant(m: MatrixLike) -> Rat:
    rows = _as_rows(m)
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    vals = [[rat(v) for v in r] for r in rows]
    den = 1
    for r in vals:
        for v in r:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
    a = [[int(v * den) for v in r] for r in vals]
    sign = 1
    prev = 1
    for c in range(n):
        k = next((i for i in range(c, n) if a[i][c] != 0), None)
        if k is None:
            return 0
        if k != c:
            a[c], a[k] = a[k], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            a[i] = [(piv * a[i][j] - a[i][c] * a[c][j]) // prev for j in range(n)]
        prev = piv
    return rat(Fraction(sign * a[n - 1][n - 1], den ** n))


# --- homogeneous ternary forms -------------------------------------------


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples of degree ``d`` in graded-lex order, x > y > z."""
    if d < 0:
        raise ValueError("negative degree")
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[tuple[int, int, int], int]:
    return {e: i for i, e in enumerate(monomials(d))}


def n_monomials(d: int) -> int:
    return (d + 1) * (d + 2) // 2


@lru_cache(maxsize=None)
def _mul_table(d1: int, d2: int) -> tuple[tuple[int, int, int], ...]:
    idx = monomial_index(d1 + d2)
    return tuple((i, j, idx[(a1 + a2, b1 + b2, c1 + c2)])
                 for i, (a1, b1, c1) in enumerate(monomials(d1))
                 for j, (a2, b2, c2) in enumerate(monomials(d2)))


def evaluation_row(point: Sequence, d: int) -> list[Rat]:
    """Values of all degree-``d`` monomials at ``point``."""
    x, y, z = (rat(v) for v in point)
    xp = [1]
    yp = [1]
    zp = [1]
    for _ in range(d):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
        zp.append(zp[-1] * z)
    return [xp[a] * yp[b] * zp[c] for a, b, c in monomials(d)]


@dataclass(frozen=True)
class HomoPoly:
    """Homogeneous ternary form of degree ``degree``."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        coeffs = tuple(rat(c) for c in self.coeffs)
        if len(coeffs) != n_monomials(self.degree):
            raise ValueError(f"degree {self.degree} form needs {n_monomials(self.degree)} "
                             f"coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_terms(cls, degree: int, terms: dict) -> "HomoPoly":
        """Build from ``{(a, b, c): coefficient}``."""
        idx = monomial_index(degree)
        coeffs = [0] * n_monomials(degree)
        for exps, c in terms.items():
            coeffs[idx[tuple(exps)]] += rat(c)
        return cls(degree, coeffs)

    @classmethod
    def zero(cls, degree: int) -> "HomoPoly":
        return cls(degree, (0,) * n_monomials(degree))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def canonical(self) -> "HomoPoly":
        return HomoPoly(self.degree, canonical(self.coeffs))

    def __add__(self, other: "HomoPoly") -> "HomoPoly":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return HomoPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HomoPoly") -> "HomoPoly":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return HomoPoly(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "HomoPoly":
        c = rat(c)
        return HomoPoly(self.degree, [c * a for a in self.coeffs])

    def __mul__(self, other: "HomoPoly") -> "HomoPoly":
        return poly_mul(self, other)

    def __call__(self, point) -> Rat:
        return poly_eval(self, point)

    def gradient(self, point) -> tuple[Rat, Rat, Rat]:
        """Partial derivatives (d/dx, d/dy, d/dz) evaluated at ``point``."""
        x, y, z = (rat(v) for v in _coords(point))
        gx = gy = gz = 0
        for c, (a, b, e) in zip(self.coeffs, monomials(self.degree)):
            if not c:
                continue
            if a:
                gx += c * a * x ** (a - 1) * y ** b * z ** e
            if b:
                gy += c * b * x ** a * y ** (b - 1) * z ** e
            if e:
                gz += c * e * x ** a * y ** b * z ** (e - 1)
        return rat(gx), rat(gy), rat(gz)

    def substitute(self, matrix: Sequence[Sequence]) -> "HomoPoly":
        """Form ``F(M v)`` for a 3x3 matrix ``M`` (change of coordinates)."""
        rows = [[rat(v) for v in r] for r in matrix]
        lin = [HomoPoly(1, rows[i]) for i in range(3)]
        result = HomoPoly.zero(self.degree)
        for c, (a, b, e) in zip(self.coeffs, monomials(self.degree)):
            if not c:
                continue
            term = HomoPoly(0, (c,))
            for _ in range(a):
                term = poly_mul(term, lin[0])
            for _ in range(b):
                term = poly_mul(term, lin[1])
            for _ in range(e):
                term = poly_mul(term, lin[2])
            result = result + term
        return result

    def __str__(self):
        names = "xyz"
        parts = []
        for c, exps in zip(self.coeffs, monomials(self.degree)):
            if not c:
                continue
            mono = "".join(n + (f"^{k}" if k > 1 else "") for n, k in zip(names, exps) if k)
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts) if parts else "0"


def _coords(point) -> tuple:
    return tuple(getattr(point, "coords", point))


def poly_mul(f: HomoPoly, g: HomoPoly) -> HomoPoly:
    """Exact product; degree adds."""
    out = [0] * n_monomials(f.degree + g.degree)
    fc, gc = f.coeffs, g.coeffs
    for i, j, k in _mul_table(f.degree, g.degree):
        a = fc[i]
        if a:
            b = gc[j]
            if b:
                out[k] += a * b
    return HomoPoly(f.degree + g.degree, out)


def product(factors: Iterable[HomoPoly]) -> HomoPoly:
    result = HomoPoly(0, (1,))
    for f in factors:
        result = poly_mul(result, f)
    return result


def poly_eval(f: HomoPoly, point) -> Rat:
    """Value of ``f`` at the stored representative of ``point``."""
    row = evaluation_row(_coords(point), f.degree)
    return rat(sum(c * v for c, v in zip(f.coeffs, row) if c))


@lru_cache(maxsize=None)
def _division_matrix_rows(dq: int, dg: int, gcoeffs: tuple) -> tuple[tuple, ...]:
    # column j of the matrix is g * (j-th monomial of degree dq)
    nf = n_monomials(dq + dg)
    cols = []
    for k in range(n_monomials(dq)):
        basis = [0] * n_monomials(dq)
        basis[k] = 1
        cols.append(poly_mul(HomoPoly(dg, gcoeffs), HomoPoly(dq, basis)).coeffs)
    return tuple(tuple(cols[k][i] for k in range(len(cols))) for i in range(nf))


def poly_divide_exact(f: HomoPoly, g: HomoPoly) -> HomoPoly:
    """Canonical ``q`` with ``f = g * q`` up to a nonzero scalar.

    Solved as a linear system on the coefficients of ``q``; an inconsistent
    system raises :class:`NotDivisible`.
    """
    if f.degree <= g.degree:
        raise ValueError("dividend degree must exceed divisor degree")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        raise NotDivisible("zero dividend has no canonical quotient")
    dq = f.degree - g.degree
    rows = _division_matrix_rows(dq, g.degree, g.coeffs)
    x = solve(rows, f.coeffs)
    if x is None:
        raise NotDivisible(f"degree-{f.degree} form is not divisible by the degree-{g.degree} divisor")
    return HomoPoly(dq, canonical(x))


def poly_quotient(f: HomoPoly, g: HomoPoly) -> HomoPoly:
    """Exact ``q`` with ``f = g * q`` (not rescaled)."""
    if f.degree < g.degree:
        raise ValueError("dividend degree below divisor degree")
    dq = f.degree - g.degree
    rows = _division_matrix_rows(dq, g.degree, g.coeffs)
    x = solve(rows, f.coeffs)
    if x is None:
        raise NotDivisible("no exact quotient")
    return HomoPoly(dq, x)


def stacked_rank(forms: Sequence[HomoPoly]) -> int:
    """Rank of the coefficient vectors of forms of a common degree."""
    if not forms:
        return 0
    if len({f.degree for f in forms}) != 1:
        raise ValueError("forms of different degrees")
    return rank([f.coeffs for f in forms])


# --- univariate helpers (used for shared-component detection) ------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def univariate_gcd_degree(p: Sequence, q: Sequence) -> int:
    """Degree of gcd of two univariate polynomials (coefficients low to high).

    Returns -1 when both are zero.
    """
    a = _trim([Fraction(v) for v in p])
    b = _trim([Fraction(v) for v in q])
    while b:
        # a mod b
        a = a[:]
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            _trim(a)
        a, b = b, a
    return len(a) - 1


def restrict_to_line(f: HomoPoly, p, q) -> list[Rat]:
    """Coefficients (in ``s``, low to high) of ``f(p + s q)``."""
    p = [rat(v) for v in _coords(p)]
    q = [rat(v) for v in _coords(q)]
    d = f.degree
    lin = [[p[i], q[i]] for i in range(3)]  # each coordinate as a + b s

    def pmul(u, v):
        out = [0] * (len(u) + len(v) - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        out[i + j] += a * b
        return out

    powers = []
    for i in range(3):
        pw = [[1]]
        for _ in range(d):
            pw.append(pmul(pw[-1], lin[i]))
        powers.append(pw)
    out = [0] * (d + 1)
    for c, (a, b, e) in zip(f.coeffs, monomials(d)):
        if not c:
            continue
        term = pmul(pmul(powers[0][a], powers[1][b]), powers[2][e])
        for k, v in enumerate(term):
            out[k] += c * v
    return out
