"""Residual-curve certificates and pencils of plane curves.

Two degree-``d`` curves through ``2d`` points of an irreducible conic ``C``
restrict to proportional binary forms on ``C``.  Choosing ``(lam, mu)`` so
that ``lam*D1 + mu*D2`` also vanishes at one extra point of ``C`` therefore
makes the combination vanish on all of ``C``, and the exact quotient
``R = (lam*D1 + mu*D2) / C`` carries the remaining ``d^2 - 2d`` intersection
points.  The identity ``lam*D1 + mu*D2 = C*R`` is the certificate; the
(generally irrational) residual points are never computed.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .exact_linear import (HomoPoly, NotDivisible, Rat, canonical, nullspace, poly_mul,
                           poly_quotient, rank, rat, rat_to_str, restrict_to_line,
                           univariate_gcd_degree)
from .projective import UNIT_CIRCLE, Conic, HPoint, conic_point, param_point


class CertificateError(ValueError):
    """A residual certificate could not be produced."""


class SharedComponent(CertificateError):
    pass


class DependentCurves(CertificateError):
    pass


class BasePointError(CertificateError):
    """Base points are missing from one of the curves, or miscounted."""


class AmbiguousIntersection(ValueError):
    """Pencils intersect in more than a single curve."""


def aux_parameters() -> Iterable[int]:
    """Deterministic auxiliary parameter walk: 2, 3, 5, 7, 11, ..."""
    found: list[int] = []
    n = 2
    while True:
        if all(n % p for p in found):
            found.append(n)
            yield n
        n += 1


def aux_point(divisor: Conic, base_points: Sequence[HPoint], t: int) -> HPoint:
    if divisor == UNIT_CIRCLE:
        return param_point(t)
    return conic_point(divisor, base_points[0], (1, t, t * t + 1))


_PROBE_LINES = (
    ((3, -7, 11), (-5, 13, 2)),
    ((17, 4, -9), (2, -19, 23)),
    ((-29, 31, 6), (37, 5, -41)),
    ((43, -2, 47), (-8, 53, 59)),
)


def shares_component(f: HomoPoly, g: HomoPoly) -> bool:
    """Whether two forms have a common factor.

    Restricts both forms to a few fixed lines and tests the univariate gcd;
    a common component shows up on every line.
    """
    for p, q in _PROBE_LINES:
        rf = restrict_to_line(f, p, q)
        rg = restrict_to_line(g, p, q)
        at_infinity = rf[-1] == 0 and rg[-1] == 0
        if univariate_gcd_degree(rf, rg) < 1 and not at_infinity:
            return False
    return True


@dataclass(frozen=True)
class ResidualCertificate:
    """Exact identity ``lam*d1 + mu*d2 = divisor * residual``."""

    lam: Rat
    mu: Rat
    residual: HomoPoly
    divisor: Conic
    d1: HomoPoly
    d2: HomoPoly
    aux_param: int

    def combination(self) -> HomoPoly:
        return self.d1.scale(self.lam) + self.d2.scale(self.mu)

    def verify(self) -> bool:
        """Re-multiply and compare; the soundness check."""
        return (poly_mul(self.divisor.form, self.residual) - self.combination()).is_zero()

    def to_json_obj(self) -> dict:
        return {
            "lambda": rat_to_str(self.lam),
            "mu": rat_to_str(self.mu),
            "residual": [rat_to_str(c) for c in self.residual.coeffs],
            "divisor": [rat_to_str(c) for c in self.divisor.coeffs],
            "aux_param": self.aux_param,
        }


_recorders: list[list] = []


@contextlib.contextmanager
def recording() -> Iterator[list]:
    """Collect every certificate issued inside the block."""
    log: list = []
    _recorders.append(log)
    try:
        yield log
    finally:
        _recorders.remove(log)


def record(cert: "ResidualCertificate") -> None:
    """Hand a certificate made elsewhere (e.g. in a worker process) to active recorders."""
    for log in _recorders:
        log.append(cert)


def residual_curve(d1: HomoPoly, d2: HomoPoly, divisor: Conic, base_points: Sequence[HPoint],
                   aux: Iterable[int] | None = None, max_tries: int = 6) -> ResidualCertificate:
    """Residual curve of ``d1, d2`` with respect to the conic ``divisor``.

    ``base_points`` lists the ``2d`` common points on the conic, a point of
    tangency counted twice.  ``aux`` overrides the auxiliary parameter walk.
    """
    d = d1.degree
    if d2.degree != d:
        raise ValueError("curves must have equal degree")
    if d < 3:
        raise ValueError("residual certificates need degree >= 3")
    if len(base_points) != 2 * d:
        raise BasePointError(f"expected {2 * d} base points (with multiplicity), got {len(base_points)}")
    if d1.is_zero() or d2.is_zero():
        raise DependentCurves("zero form")
    if rank([d1.coeffs, d2.coeffs]) < 2:
        raise DependentCurves("the two curves are proportional")
    if divisor.is_degenerate():
        raise CertificateError("divisor conic is degenerate")
    for p in base_points:
        if not divisor.contains(p):
            raise BasePointError(f"{p} is not on the divisor conic")
        if d1(p) != 0 or d2(p) != 0:
            raise BasePointError(f"{p} is not a common point of both curves")
    if shares_component(d1, d2):
        raise SharedComponent("the curves share a component")
    bases = set(base_points)
    tries = 0
    for t in (aux if aux is not None else aux_parameters()):
        x0 = aux_point(divisor, base_points, t)
        if x0 in bases:
            continue
        v1, v2 = d1(x0), d2(x0)
        if v1 == 0 and v2 == 0:
            continue
        lam, mu = v2, -v1
        combo = d1.scale(lam) + d2.scale(mu)
        tries += 1
        try:
            q = poly_quotient(combo, divisor.form)
        except NotDivisible:
            if tries >= max_tries:
                break
            continue
        # rescale so the residual is canonical while the identity stays exact
        can = canonical(q.coeffs)
        k = next(Fraction(c) / cc for c, cc in zip(q.coeffs, can) if cc)
        cert = ResidualCertificate(rat(lam / k), rat(mu / k), HomoPoly(q.degree, can),
                                   divisor, d1, d2, t)
        record(cert)
        return cert
    raise CertificateError("no auxiliary point produced an exact quotient; "
                           "the base points do not force divisibility")


# --- pencils --------------------------------------------------------------


def _rref(rows: list[list[Rat]]) -> list[list[Fraction]]:
    a = [[Fraction(v) for v in r] for r in rows]
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        piv = a[r][c]
        a[r] = [v / piv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return a[:r]


@dataclass(frozen=True)
class Pencil:
    """Two-dimensional space of degree-``degree`` forms, canonically based.

    The basis is the reduced row echelon form of any spanning pair, each row
    scaled to a primitive integer vector; equal pencils compare equal.
    """

    degree: int
    basis: tuple

    @property
    def forms(self) -> tuple[HomoPoly, HomoPoly]:
        return tuple(HomoPoly(self.degree, b) for b in self.basis)

    def contains(self, h: HomoPoly) -> bool:
        return in_pencil(h, self)

    def to_json_obj(self) -> list:
        return [[rat_to_str(c) for c in b] for b in self.basis]


def pencil_of(f: HomoPoly, g: HomoPoly) -> Pencil:
    if f.degree != g.degree:
        raise ValueError("pencil generators must have equal degree")
    rows = _rref([list(f.coeffs), list(g.coeffs)])
    if len(rows) < 2:
        raise DependentCurves("pencil generators are dependent")
    return Pencil(f.degree, tuple(canonical(r) for r in rows))


def in_pencil(h: HomoPoly, pencil: Pencil) -> bool:
    if h.degree != pencil.degree:
        raise ValueError("degree mismatch")
    return rank([pencil.basis[0], pencil.basis[1], h.coeffs]) == 2


def common_member(pencils: Sequence[Pencil]) -> HomoPoly | None:
    """The single form shared by all pencils, ``None`` if they share none."""
    if len(pencils) < 2:
        raise ValueError("need at least two pencils")
    deg = pencils[0].degree
    if any(p.degree != deg for p in pencils):
        raise ValueError("pencils of different degree")
    n = len(pencils[0].basis[0])
    k = len(pencils)
    # unknowns (a_1, b_1, ..., a_k, b_k); a_1 F_1 + b_1 G_1 = a_j F_j + b_j G_j
    rows = []
    f1, g1 = pencils[0].basis
    for j in range(1, k):
        fj, gj = pencils[j].basis
        for c in range(n):
            row = [0] * (2 * k)
            row[0], row[1] = f1[c], g1[c]
            row[2 * j], row[2 * j + 1] = -fj[c], -gj[c]
            rows.append(row)
    ker = nullspace(rows)
    if not ker:
        return None
    if len(ker) > 1:
        raise AmbiguousIntersection(f"pencils share a {len(ker)}-dimensional space")
    a, b = ker[0][0], ker[0][1]
    return HomoPoly(deg, [a * x + b * y for x, y in zip(f1, g1)]).canonical()
