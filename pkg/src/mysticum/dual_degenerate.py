"""Circumscribed polygons by duality, and tangency (limit) configurations.

A polygon circumscribed about the unit circle dualizes to a polygon inscribed
in it: the side tangent at a point becomes that point again.  Each dual
statement is checked by running the inscribed-polygon machinery on the dual
scene and carrying any conics across with the adjugate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .decomposition import ResidualCertificate, in_pencil, pencil_of, residual_curve
from .exact_linear import HomoPoly, Rat, nullspace, poly_mul, product, rat, stacked_rank
from .hexagon import HexScene, generalized_pascal_line, pascal_certificate
from .octagon import (CYCLIC_PAIRING, OctScene, cycle_matchings, generalized_steiner_conic_report,
                      mystic_certificate, random_conic_through, residual_meets)
from .projective import (UNIT_CIRCLE, Conic, GeometryError, HLine, HPoint, coconic, collinear,
                         concurrent, dualize, evaluation_row, join, meet, param_point,
                         point_on_line, tangent_at)
from .scene import Scene, distinct_params, inscribed_scene, labels, stream


class EmptySpace(GeometryError):
    """No curve satisfies the imposed conditions."""


# --- tangent scenes --------------------------------------------------------


@dataclass
class TangentScene:
    """Polygon whose sides touch the base conic.

    Side ``i`` joins vertex ``i`` to vertex ``i+1``, so vertex ``i`` is the
    meet of sides ``i-1`` and ``i``.
    """

    seed: int
    sides: list[HLine]
    conic: Conic = UNIT_CIRCLE
    params: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.sides) < 3:
            raise GeometryError("need at least three sides")
        if len(set(self.sides)) != len(self.sides):
            raise GeometryError("sides must be distinct")
        dual = dualize(self.conic)
        for l in self.sides:
            if not dual.contains(dualize(l)):
                raise GeometryError(f"{l} does not touch the base conic")
        vs = self.vertices
        if len(set(vs)) != len(vs):
            raise GeometryError("vertices must be distinct")

    @property
    def n(self) -> int:
        return len(self.sides)

    @property
    def labels(self) -> list[str]:
        return labels(self.n)

    @property
    def vertices(self) -> list[HPoint]:
        return [meet(self.sides[i - 1], self.sides[i]) for i in range(self.n)]

    def vertex(self, label: str) -> HPoint:
        return self.vertices[self.labels.index(label)]

    def side(self, name: str) -> HLine:
        """Side by its two vertex labels, e.g. ``"AB"`` or ``"FA"``."""
        ls = self.labels
        i, j = ls.index(name[0]), ls.index(name[1])
        if (i + 1) % self.n == j:
            return self.sides[i]
        if (j + 1) % self.n == i:
            return self.sides[j]
        raise ValueError(f"{name} is not a side")

    def side_names(self) -> list[str]:
        ls = self.labels
        return [ls[i] + ls[(i + 1) % self.n] for i in range(self.n)]

    def dual(self) -> Scene:
        """Inscribed scene whose point ``X`` is the dual of side ``i`` (``X`` the i-th label)."""
        pts = {lab: dualize(l) for lab, l in zip(self.labels, self.sides)}
        return Scene(self.seed, dualize(self.conic), pts)

    @classmethod
    def from_inscribed(cls, scene: Scene) -> "TangentScene":
        """Circumscribed polygon dual to an inscribed one."""
        return cls(scene.seed, [dualize(p) for p in scene.points.values()], dualize(scene.conic))


def tangent_scene(n: int, seed: int, params: Sequence | None = None) -> TangentScene:
    if params is None:
        params = distinct_params(stream(seed, f"tangent:{n}"), n)
    params = [rat(t) for t in params]
    if len(set(params)) != n:
        raise GeometryError("tangency parameters must be distinct")
    sides = [tangent_at(UNIT_CIRCLE, param_point(t)) for t in params]
    return TangentScene(seed, sides, UNIT_CIRCLE, params)


def tangent_conic(s: TangentScene, side_names: Sequence[str], rng, avoid=()) -> Conic:
    """Seeded conic touching four given sides (dual of a conic through four points)."""
    pts = [dualize(s.side(n)) for n in side_names]
    dual_avoid = [dualize(c) for c in avoid]
    return dualize(random_conic_through(pts, rng, dual_avoid))


# --- dual verifiers --------------------------------------------------------

# Prop 3.2 labels for the dual points of the sides AB, FA, BC, CD, DE, EF
PROP_6_1_RELABEL = {"A": "A", "F": "B", "B": "C", "C": "D", "D": "E", "E": "F"}
STAR_OCTAGON = "ADGBEHCF"


def _hex_dual(s: TangentScene, relabel: dict | None = None) -> HexScene:
    scene = s.dual()
    if relabel:
        scene = scene.relabel(relabel)
    return HexScene(scene)


def prop6_1(s: TangentScene, c1: Conic | None = None, c2: Conic | None = None) -> bool:
    """Other common tangents of the two conics and the line CE are concurrent."""
    rng = stream(s.seed, "prop6_1")
    c1 = c1 or tangent_conic(s, ["AB", "BC", "CD", "FA"], rng)
    c2 = c2 or tangent_conic(s, ["AB", "DE", "EF", "FA"], rng, [c1])
    h = _hex_dual(s, PROP_6_1_RELABEL)
    d1, d2 = dualize(c1), dualize(c2)
    cert = pascal_certificate(h, poly_mul(d1.form, h.line("EF").form()),
                              poly_mul(d2.form, h.line("CD").form()))
    ce = join(s.vertex("C"), s.vertex("E"))
    return cert.verify() and cert.residual(dualize(ce)) == 0


def thm6_2(s: TangentScene, conics: Sequence[Conic] | None = None) -> bool:
    """The three meets of the other common tangents are collinear."""
    rng = stream(s.seed, "thm6_2")
    if conics is None:
        conics = []
        for sides in (["AB", "BC", "CD", "DE"], ["AB", "BC", "EF", "FA"], ["CD", "DE", "EF", "FA"]):
            conics.append(tangent_conic(s, sides, rng, conics))
    h = _hex_dual(s)
    d1, d2, d3 = (dualize(c) for c in conics)
    f1 = poly_mul(d1.form, h.line("EF").form())
    f2 = poly_mul(d2.form, h.line("CD").form())
    f3 = poly_mul(d3.form, h.line("AB").form())
    lines = [generalized_pascal_line(h, a, b) for a, b in ((f2, f3), (f1, f3), (f1, f2))]
    # concurrent dual lines are collinear primal points
    return collinear([dualize(l) for l in lines])


def thm6_3(s: TangentScene, ordering: str = STAR_OCTAGON) -> bool:
    """A conic touches all sides of the octagon on the same vertices in ``ordering``."""
    if s.n != 8:
        raise ValueError("an octagon is required")
    ls = s.labels
    vs = [s.vertex(c) for c in ordering]
    sides = [join(vs[i], vs[(i + 1) % 8]) for i in range(8)]
    pts = [dualize(l) for l in sides]
    if ordering == STAR_OCTAGON:
        # the star's sides dualize to the eight residual meets of the dual edge quartics
        o = OctScene(s.dual())
        m1, m2 = cycle_matchings("".join(ls))
        cert = mystic_certificate(o, o.edge_form(m1), o.edge_form(m2))
        meets = residual_meets(o, m1, m2)
        return cert.verify() and set(meets) == set(pts) and all(cert.residual(p) == 0 for p in pts)
    return coconic(pts)


def _split_conics(s: TangentScene, k: int, salt: str):
    """``k`` conics touching the first four sides and ``k`` touching the last four."""
    names = s.side_names()
    rng = stream(s.seed, salt)
    ds: list[Conic] = []
    es: list[Conic] = []
    for _ in range(k):
        ds.append(tangent_conic(s, names[:4], rng, ds))
        es.append(tangent_conic(s, names[4:], rng, es))
    return ds, es


def _dual_quartic(d: Conic, e: Conic) -> HomoPoly:
    return poly_mul(dualize(d).form, dualize(e).form)


def thm6_4_conic(s: TangentScene, ds=None, es=None) -> tuple[Conic, ResidualCertificate]:
    """Conic touching the eight remaining common tangents; returned with its dual certificate."""
    if ds is None or es is None:
        ds, es = _split_conics(s, 2, "thm6_4")
    o = OctScene(s.dual())
    cert = mystic_certificate(o, _dual_quartic(ds[0], es[0]), _dual_quartic(ds[1], es[1]))
    return dualize(Conic(cert.residual)), cert


def thm6_4(s: TangentScene, ds=None, es=None) -> bool:
    conic, cert = thm6_4_conic(s, ds, es)
    return cert.verify() and not conic.is_degenerate()


def thm6_5(s: TangentScene, ds=None, es=None) -> bool:
    """The three conics share four common tangents (they span one dual pencil)."""
    if ds is None or es is None:
        ds, es = _split_conics(s, 3, "thm6_5")
    o = OctScene(s.dual())
    qs = [_dual_quartic(d, e) for d, e in zip(ds, es)]
    certs = [mystic_certificate(o, qs[a], qs[b]) for a, b in ((1, 2), (0, 2), (0, 1))]
    if not all(c.verify() for c in certs):
        return False
    duals = [c.residual for c in certs]
    return in_pencil(duals[2], pencil_of(duals[0], duals[1]))


def thm6_6(s: TangentScene, pairing=CYCLIC_PAIRING) -> bool:
    """The twelve common tangents of the X_i, Y_i pairs touch one conic."""
    rng = stream(s.seed, "thm6_6")
    names = s.side_names()
    e = tangent_conic(s, names[:4], rng)
    f = tangent_conic(s, names[4:], rng)
    cs: list[Conic] = []
    ds: list[Conic] = []
    for _ in range(3):
        cs.append(tangent_conic(s, names[:4], rng, cs + [e]))
        ds.append(tangent_conic(s, names[4:], rng, ds + [f]))
    o = OctScene(s.dual())
    rep = generalized_steiner_conic_report(o, _dual_quartic(e, f), [dualize(c) for c in cs],
                                           [dualize(d) for d in ds], pairing)
    return rep.conic is not None


DUAL_STATEMENTS = {
    "prop6_1": (6, prop6_1),
    "thm6_2": (6, thm6_2),
    "thm6_3": (8, thm6_3),
    "thm6_4": (8, thm6_4),
    "thm6_5": (8, thm6_5),
    "thm6_6": (8, thm6_6),
}


def verify_dual(statement_id: str, s: TangentScene) -> bool:
    try:
        n, fn = DUAL_STATEMENTS[statement_id]
    except KeyError:
        raise ValueError(f"unknown dual statement {statement_id!r}") from None
    if s.n != n:
        raise ValueError(f"{statement_id} needs a circumscribed {n}-gon")
    return fn(s)


# --- tangency-constrained curves ------------------------------------------


def tangency_conditions(p: HPoint, line: HLine, d: int) -> list[list[Rat]]:
    """Linear conditions: ``F(p) = 0`` and ``grad F(p)`` proportional to ``line``."""
    if not line.contains(p):
        raise GeometryError(f"{p} is not on {line}")
    from .exact_linear import monomials
    mons = monomials(d)
    grads = []
    for k in range(3):
        row = []
        for m in mons:
            if m[k] == 0:
                row.append(0)
                continue
            e = list(m)
            e[k] -= 1
            v = m[k]
            for c, x in zip(e, p.coords):
                v *= x ** c
            row.append(v)
        grads.append(row)
    l = line.coeffs
    minors = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        minors.append([gi * l[j] - gj * l[i] for gi, gj in zip(grads[i], grads[j])])
    return [evaluation_row(p.coords, d)] + minors


def tangency_constrained_curve(points: Sequence[HPoint], tangents: Sequence[tuple[HPoint, HLine]],
                               d: int) -> list[HomoPoly]:
    """Basis of degree-``d`` forms through ``points`` with prescribed tangent lines."""
    rows = [evaluation_row(p.coords, d) for p in points]
    for p, l in tangents:
        rows.extend(tangency_conditions(p, l, d))
    basis = nullspace(rows)
    if not basis:
        raise EmptySpace("no curve satisfies the conditions")
    return [HomoPoly(d, v) for v in basis]


def _draw(basis: Sequence[HomoPoly], rng, avoid: Sequence[HomoPoly] = ()) -> HomoPoly:
    from .exact_linear import rank
    d = basis[0].degree
    n = len(basis[0].coeffs)
    while True:
        coeffs = [rng.nonzero_int(7) for _ in basis]
        f = HomoPoly(d, [sum(c * b.coeffs[i] for c, b in zip(coeffs, basis)) for i in range(n)])
        if f.is_zero() or any(rank([f.coeffs, a.coeffs]) < 2 for a in avoid):
            continue
        return f.canonical()


def tangent_residual(s: Scene, d: int, salt: str = "tangent-residual") -> ResidualCertificate:
    """Two degree-``d`` curves through the ``2d-1`` vertices, sharing the conic's tangent at ``A``."""
    pts = list(s.points.values())
    if len(pts) != 2 * d - 1:
        raise ValueError(f"need {2 * d - 1} vertices for degree {d}")
    a = pts[0]
    basis = tangency_constrained_curve(pts[1:], [(a, tangent_at(s.conic, a))], d)
    rng = stream(s.seed, salt)
    f1 = _draw(basis, rng)
    f2 = _draw(basis, rng, [f1])
    return residual_curve(f1, f2, s.conic, [a] + pts)


def prop7_1(s: Scene) -> bool:
    cert = tangent_residual(s, 3, "prop7_1")
    return cert.verify() and cert.residual.degree == 1


def prop7_2(s: Scene) -> bool:
    cert = tangent_residual(s, 4, "prop7_2")
    return cert.verify() and cert.residual.degree == 2


def prop7_3(s: Scene) -> bool:
    a, b, c, d = (s[k] for k in "ABCD")
    m = meet(join(a, d), join(b, c))
    n = meet(join(a, b), join(c, d))
    p = meet(tangent_at(s.conic, a), tangent_at(s.conic, c))
    q = meet(tangent_at(s.conic, b), tangent_at(s.conic, d))
    return collinear([m, n, p, q])


def prop7_4(s: Scene) -> bool:
    """``s`` holds the three points of tangency P, Q, R."""
    p, q, r = (s[k] for k in "PQR")
    tp, tq, tr = (tangent_at(s.conic, x) for x in (p, q, r))
    a, b, c = meet(tp, tr), meet(tp, tq), meet(tq, tr)
    return concurrent([join(a, q), join(b, r), join(c, p)])


def pappus(s: Scene) -> bool:
    """Hexagon ABCDEF with A, C, E on one line and B, D, F on another."""
    a, b, c, d, e, f = (s[k] for k in "ABCDEF")
    x = meet(join(a, b), join(d, e))
    y = meet(join(b, c), join(e, f))
    z = meet(join(c, d), join(f, a))
    return collinear([x, y, z])


DEGENERATE_STATEMENTS = {
    "prop7_1": prop7_1,
    "prop7_2": prop7_2,
    "prop7_3": prop7_3,
    "prop7_4": prop7_4,
    "pappus": pappus,
}


def verify_degenerate(statement_id: str, s: Scene) -> bool:
    try:
        fn = DEGENERATE_STATEMENTS[statement_id]
    except KeyError:
        raise ValueError(f"unknown degenerate statement {statement_id!r}") from None
    return fn(s)


def pappus_scene(seed: int) -> Scene:
    """Two seeded rational lines (their product as the scene conic) with 3 + 3 points."""
    rng = stream(seed, "pappus")
    while True:
        l1 = HLine(rng.nonzero_int(9), rng.nonzero_int(9), rng.nonzero_int(9))
        l2 = HLine(rng.nonzero_int(9), rng.nonzero_int(9), rng.nonzero_int(9))
        if l1 == l2:
            continue
        o = meet(l1, l2)
        s1 = distinct_params(rng, 3)
        s2 = distinct_params(rng, 3)
        first = [point_on_line(l1, t) for t in s1]
        second = [point_on_line(l2, t) for t in s2]
        if o in first or o in second or len(set(first + second)) < 6:
            continue
        pts = dict(zip("ACE", first)) | dict(zip("BDF", second))
        conic = Conic(poly_mul(l1.form(), l2.form()))
        return Scene(seed, conic, pts)


def degenerate_scene(statement_id: str, seed: int) -> Scene:
    if statement_id == "prop7_1":
        return inscribed_scene(5, seed)
    if statement_id == "prop7_2":
        return inscribed_scene(7, seed)
    if statement_id == "prop7_3":
        return inscribed_scene(4, seed)
    if statement_id == "prop7_4":
        base = inscribed_scene(3, seed)
        return base.relabel({"A": "P", "B": "Q", "C": "R"})
    if statement_id == "pappus":
        return pappus_scene(seed)
    raise ValueError(f"unknown degenerate statement {statement_id!r}")


# --- limit of the hexagon ---------------------------------------------------


@dataclass
class LimitReport:
    limit_line: HLine
    approximants: dict  # N -> line
    errors: dict  # N -> max probe discrepancy
    monotone: bool


PROBES = ((1, 2, 3), (-4, 1, 7), (5, -3, 2))


def _normalized(line: HLine, j: int, p) -> Fraction:
    return Fraction(sum(a * b for a, b in zip(line.coeffs, p)), line.coeffs[j])


def _unit_circle_param(p: HPoint) -> Fraction:
    x, y, z = p.coords
    if x + z == 0:
        raise GeometryError(f"{p} is the point at parameter infinity")
    return Fraction(y) / Fraction(x + z)


def pentagon_limit(seed: int, steps: Sequence[int] = (10, 100, 1000),
                   scene: Scene | None = None) -> LimitReport:
    """Pascal lines of ABCDEF with F -> A approach the tangent-at-A pentagon line."""
    base = scene if scene is not None else inscribed_scene(5, seed)
    if base.conic != UNIT_CIRCLE:
        raise GeometryError("the limit check runs on the unit circle")
    pts = {k: base[k] for k in "ABCDE"}
    ts = [_unit_circle_param(pts["A"])]
    tan = tangent_at(UNIT_CIRCLE, pts["A"])

    def l(p, q):
        return join(p, q).form()

    d1 = product([l(pts["A"], pts["B"]), l(pts["C"], pts["D"]), l(pts["E"], pts["A"])])
    d2 = product([l(pts["B"], pts["C"]), l(pts["D"], pts["E"]), tan.form()])
    cert = residual_curve(d1, d2, UNIT_CIRCLE, [pts["A"]] + list(pts.values()))
    limit = HLine(cert.residual.coeffs)
    j = max(range(3), key=lambda i: abs(limit.coeffs[i]))
    lines, errors = {}, {}
    for n in steps:
        f = param_point(ts[0] + Fraction(1, n))
        hex_pts = dict(pts, F=f)
        h = HexScene(Scene(seed, UNIT_CIRCLE, hex_pts))
        line = generalized_pascal_line(h, h.cubic("AB CD EF"), h.cubic("BC DE AF"))
        lines[n] = line
        errors[n] = max(abs(_normalized(line, j, p) - _normalized(limit, j, p)) for p in PROBES)
    errs = [errors[n] for n in steps]
    monotone = all(a > b for a, b in zip(errs, errs[1:]))
    return LimitReport(limit, lines, errors, monotone)
