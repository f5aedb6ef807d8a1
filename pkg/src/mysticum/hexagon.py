"""Pascal lines, Steiner and Kirkman points, and their higher incidences.

A triangle cubic ``l(AB) l(CD) l(EF)`` is encoded by its perfect matching of
the six labels.  Two matchings whose union is a hexagon give a classical
Pascal line; three pairwise-hexagonal matchings give a Steiner point (the
complement of their nine edges is two triangles) or a Kirkman point (the
complement is a hexagon).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .decomposition import (CertificateError, DependentCurves, ResidualCertificate,
                            in_pencil, pencil_of, residual_curve)
from .exact_linear import HomoPoly, poly_mul, product, rank
from .projective import (Conic, GeometryError, HLine, HPoint, coconic, collinear, concurrent,
                         conic_through, curves_through, join, meet, on_cubic_rank)
from .scene import Scene, distinct_params, hex_scene, inscribed_scene, stream

LABELS = "ABCDEF"

Matching = tuple  # sorted tuple of sorted two-letter strings, e.g. ("AB", "CE", "DF")


class ConcurrencyFailure(AssertionError):
    """Lines that must be concurrent are not (a bug signal)."""


class CollinearityFailure(AssertionError):
    """Points that must be collinear are not (a bug signal)."""


class CensusMismatch(AssertionError):
    def __init__(self, message: str, diff: dict):
        super().__init__(message)
        self.diff = diff


class ConicFitFailure(GeometryError):
    """Six points expected on one conic are not."""


def matching(text: str) -> Matching:
    """Parse ``"AB DF CE"`` into a canonical matching."""
    pairs = ["".join(sorted(e)) for e in text.split()]
    if len(set("".join(pairs))) != 2 * len(pairs):
        raise ValueError(f"{text!r} is not a matching")
    return tuple(sorted(pairs))


def all_matchings(labels: str = LABELS) -> list[Matching]:
    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for b in rest[1:]:
            r = [x for x in rest if x not in (a, b)]
            for m in rec(r):
                yield (a + b,) + m
    return sorted(tuple(sorted(m)) for m in rec(list(labels)))


def cycle_lengths(edges: Sequence[str], labels: str) -> list[int]:
    adj = defaultdict(list)
    for e in edges:
        adj[e[0]].append(e[1])
        adj[e[1]].append(e[0])
    seen, lengths = set(), []
    for v in labels:
        if v in seen:
            continue
        stack, n = [v], 0
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            n += 1
            stack.extend(adj[x])
        lengths.append(n)
    return sorted(lengths)


def is_hexagonal(m1: Matching, m2: Matching) -> bool:
    return not set(m1) & set(m2) and cycle_lengths(m1 + m2, LABELS) == [6]


def triple_kind(triple: Sequence[Matching]) -> str | None:
    """``"steiner"``, ``"kirkman"`` or ``None`` for a matching triple."""
    if not all(is_hexagonal(a, b) for a, b in itertools.combinations(triple, 2)):
        return None
    used = set(triple[0] + triple[1] + triple[2])
    rest = ["".join(e) for e in itertools.combinations(LABELS, 2) if "".join(e) not in used]
    return "steiner" if cycle_lengths(rest, LABELS) == [3, 3] else "kirkman"


def classical_triples() -> dict[str, list[tuple[Matching, Matching, Matching]]]:
    out: dict[str, list] = {"steiner": [], "kirkman": []}
    for t in itertools.combinations(all_matchings(), 3):
        kind = triple_kind(t)
        if kind:
            out[kind].append(t)
    return out


# --- orderings -----------------------------------------------------------


def canonical_ordering(order: Sequence[str]) -> str:
    """Least representative of a cyclic ordering under rotation and reflection."""
    order = list(order)
    n = len(order)
    cands = []
    for seq in (order, order[::-1]):
        for i in range(n):
            cands.append("".join(seq[i:] + seq[:i]))
    return min(cands)


@dataclass(frozen=True)
class HexOrdering:
    """Hexagon labeling, canonical modulo the dihedral group of order 12."""

    order: str

    def __init__(self, order: str):
        if sorted(order) != sorted(LABELS):
            raise ValueError(f"{order!r} is not a permutation of {LABELS}")
        object.__setattr__(self, "order", canonical_ordering(order))

    def matchings(self) -> tuple[Matching, Matching]:
        o = self.order
        m1 = matching(" ".join(o[i] + o[(i + 1) % 6] for i in (0, 2, 4)))
        m2 = matching(" ".join(o[i] + o[(i + 1) % 6] for i in (1, 3, 5)))
        return tuple(sorted((m1, m2)))

    @classmethod
    def from_matchings(cls, m1: Matching, m2: Matching) -> "HexOrdering":
        if not is_hexagonal(m1, m2):
            raise ValueError("matchings do not form a hexagon")
        adj = defaultdict(list)
        for e in m1 + m2:
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
        seq = ["A"]
        while len(seq) < 6:
            nxt = [v for v in adj[seq[-1]] if v not in seq]
            seq.append(min(nxt))
        return cls("".join(seq))


def hex_orderings() -> list[HexOrdering]:
    return sorted({HexOrdering("A" + "".join(p)) for p in itertools.permutations(LABELS[1:])},
                  key=lambda o: o.order)


# --- scene helpers -------------------------------------------------------


class HexScene:
    """Six labeled vertices A..F on the scene conic."""

    def __init__(self, scene: Scene):
        if sorted(scene.points) != list(LABELS):
            raise ValueError("a hexagon scene needs vertices A..F")
        if len(set(scene.points.values())) != 6:
            raise GeometryError("hexagon vertices must be distinct")
        for k, p in scene.points.items():
            if not scene.conic.contains(p):
                raise GeometryError(f"vertex {k} is not on the conic")
        self.scene = scene
        self._lines: dict[str, HLine] = {}

    @property
    def conic(self) -> Conic:
        return self.scene.conic

    @property
    def vertices(self) -> list[HPoint]:
        return [self.scene.points[k] for k in LABELS]

    def __getitem__(self, label: str) -> HPoint:
        return self.scene.points[label]

    def line(self, edge: str) -> HLine:
        key = "".join(sorted(edge))
        if key not in self._lines:
            self._lines[key] = join(self[key[0]], self[key[1]])
        return self._lines[key]

    def cubic(self, m: Matching | str) -> HomoPoly:
        if isinstance(m, str):
            m = matching(m)
        return product(self.line(e).form() for e in m)


def _as_hex(s) -> HexScene:
    return s if isinstance(s, HexScene) else HexScene(s)


# --- Pascal lines --------------------------------------------------------


GENERIC_MEET_PATTERN = {2: 1260, 3: 80, 4: 45}


def pascal_meet_pattern(s) -> dict[int, int]:
    """Histogram: number of Pascal lines through a point -> number of such points."""
    s = _as_hex(s)
    lines = [classical_pascal_line(s, o) for o in hex_orderings()]
    through: dict[HPoint, set] = defaultdict(set)
    for i, j in itertools.combinations(range(len(lines)), 2):
        through[meet(lines[i], lines[j])].update((i, j))
    hist: dict[int, int] = defaultdict(int)
    for ls in through.values():
        hist[len(ls)] += 1
    return dict(sorted(hist.items()))


def is_general_position(s) -> bool:
    """No coincidences among Pascal-line meets beyond the forced ones."""
    try:
        return pascal_meet_pattern(s) == GENERIC_MEET_PATTERN
    except GeometryError:
        return False


def general_hex_scene(seed: int, max_attempts: int = 64) -> Scene:
    """Seeded hexagon, resampled until it is in general position."""
    for attempt in range(max_attempts):
        if attempt == 0:
            scene = hex_scene(seed)
        else:
            params = distinct_params(stream(seed, f"hex-retry:{attempt}"), 6)
            scene = inscribed_scene(6, seed, params)
        if is_general_position(scene):
            return scene
    raise GeometryError(f"no general-position hexagon for seed {seed}")



def classical_pascal_line(s, o: HexOrdering | str) -> HLine:
    """Line through the meets of opposite sides of the hexagon ``o``."""
    s = _as_hex(s)
    order = o.order if isinstance(o, HexOrdering) else o
    sides = [s.line(order[i] + order[(i + 1) % 6]) for i in range(6)]
    meets = [meet(sides[i], sides[i + 3]) for i in range(3)]
    if not collinear(meets):
        raise CollinearityFailure(f"opposite-side meets of {order} are not collinear")
    a, b = (meets[0], meets[1]) if meets[0] != meets[1] else (meets[0], meets[2])
    return join(a, b)


def pascal_certificate(s, d1: HomoPoly, d2: HomoPoly, **kw) -> ResidualCertificate:
    s = _as_hex(s)
    return residual_curve(d1, d2, s.conic, s.vertices, **kw)


def generalized_pascal_line(s, d1: HomoPoly, d2: HomoPoly) -> HLine:
    """Residual line of two cubics through the six vertices."""
    cert = pascal_certificate(s, d1, d2)
    return HLine(cert.residual.coeffs)


def pascal_line_of(s, m1: Matching | str, m2: Matching | str) -> HLine:
    s = _as_hex(s)
    return generalized_pascal_line(s, s.cubic(m1), s.cubic(m2))


def conic_through_with(points: Sequence[HPoint], extra: HPoint) -> Conic:
    return conic_through(list(points) + [extra])


def _free_points(s: HexScene, salt: str, count: int) -> list[HPoint]:
    """Seeded points off the conic and off every side line."""
    rng = stream(s.scene.seed, salt)
    out: list[HPoint] = []
    while len(out) < count:
        p = HPoint(rng.nonzero_int(40), rng.nonzero_int(40), rng.randint(1, 20))
        if s.conic.contains(p) or p in out:
            continue
        if any(s.line(a + b).contains(p) for a, b in itertools.combinations(LABELS, 2)):
            continue
        out.append(p)
    return out


def prop_3_2_conics(s, fifth: Sequence[HPoint] | None = None) -> tuple[Conic, Conic]:
    s = _as_hex(s)
    if fifth is None:
        fifth = _free_points(s, "prop3_2", 2)
    c1 = conic_through([s["A"], s["B"], s["C"], s["D"], fifth[0]])
    c2 = conic_through([s["A"], s["B"], s["E"], s["F"], fifth[1]])
    return c1, c2


def prop_3_2_verify(s, fifth: Sequence[HPoint] | None = None) -> bool:
    """Meet of CD, EF lies on the residual line of C1*l(EF) and C2*l(CD)."""
    s = _as_hex(s)
    c1, c2 = prop_3_2_conics(s, fifth)
    d1 = poly_mul(c1.form, s.line("EF").form())
    d2 = poly_mul(c2.form, s.line("CD").form())
    cert = pascal_certificate(s, d1, d2)
    x = meet(s.line("CD"), s.line("EF"))
    return cert.verify() and cert.residual(x) == 0


def prop_3_5_verify(s, fifth: Sequence[HPoint] | None = None) -> bool:
    """Residual lines of the conic pairs through ABCD, ABEF, CDEF are concurrent."""
    s = _as_hex(s)
    if fifth is None:
        fifth = _free_points(s, "prop3_5", 3)
    c1 = conic_through([s["A"], s["B"], s["C"], s["D"], fifth[0]])
    c2 = conic_through([s["A"], s["B"], s["E"], s["F"], fifth[1]])
    c3 = conic_through([s["C"], s["D"], s["E"], s["F"], fifth[2]])
    d1 = poly_mul(c1.form, s.line("EF").form())
    d2 = poly_mul(c2.form, s.line("CD").form())
    d3 = poly_mul(c3.form, s.line("AB").form())
    lines = [generalized_pascal_line(s, a, b) for a, b in ((d2, d3), (d1, d3), (d1, d2))]
    return concurrent(lines)


def gsk_point(s, d1: HomoPoly, d2: HomoPoly, d3: HomoPoly) -> HPoint:
    """Common point of the three pairwise generalized Pascal lines."""
    s = _as_hex(s)
    p1 = generalized_pascal_line(s, d2, d3)
    p2 = generalized_pascal_line(s, d1, d3)
    p3 = generalized_pascal_line(s, d1, d2)
    if not concurrent([p1, p2, p3]):
        raise ConcurrencyFailure("generalized Pascal lines are not concurrent")
    if p1 != p2:
        return meet(p1, p2)
    return meet(p1, p3)


STEINER_EXAMPLE = ("AB DE CF", "BE CD AF", "AD BC EF")
KIRKMAN_EXAMPLE = ("AB DF CE", "AE BF CD", "AC BD EF")

# generalized Steiner line: p_i, q_i pair the cubic D with these triangle cubics
STEINER_LINE_P = ("AB DF CE", "AD BC EF", "AE BD CF", "AC BF DE")
STEINER_LINE_Q = ("AC EF BD", "AB CF DE", "AD BF CE", "AE BC DF")
STEINER_LINE_CUBIC = "AF BE CD"


def random_cubic_through(s, salt: str = "cubic", exclude: Sequence[HomoPoly] = ()) -> HomoPoly:
    """Seeded cubic through the six vertices, not a multiple of any excluded form."""
    s = _as_hex(s)
    basis = curves_through(s.vertices, 3)
    rng = stream(s.scene.seed, salt)
    while True:
        coeffs = [rng.nonzero_int(6) for _ in basis]
        f = HomoPoly(3, [sum(c * b.coeffs[i] for c, b in zip(coeffs, basis))
                         for i in range(10)])
        if any(rank([f.coeffs, e.coeffs]) < 2 for e in exclude):
            continue
        if _divisible_by(f, s.conic.form):
            continue
        return f.canonical()


def _divisible_by(f: HomoPoly, g: HomoPoly) -> bool:
    from .exact_linear import NotDivisible, poly_quotient
    try:
        poly_quotient(f, g)
        return True
    except NotDivisible:
        return False


@dataclass
class SteinerLineConfiguration:
    line: HLine
    points: list[HPoint]
    p_lines: list[HLine]
    q_lines: list[HLine]


def generalized_steiner_configuration(s, d: HomoPoly) -> SteinerLineConfiguration:
    s = _as_hex(s)
    partners = [s.cubic(m) for m in STEINER_LINE_P + STEINER_LINE_Q]
    for f in partners:
        if rank([d.coeffs, f.coeffs]) < 2:
            raise DependentCurves("D coincides with one of the eight triangle cubics")
    p = [generalized_pascal_line(s, d, s.cubic(m)) for m in STEINER_LINE_P]
    q = [generalized_pascal_line(s, d, s.cubic(m)) for m in STEINER_LINE_Q]
    pts = [meet(a, b) for a, b in zip(p, q)]
    if not collinear(pts):
        raise CollinearityFailure("generalized Steiner points are not collinear")
    return SteinerLineConfiguration(_line_through(pts), pts, p, q)


def generalized_steiner_line(s, d: HomoPoly) -> HLine:
    """Line carrying the four generalized ``D`` Steiner points."""
    return generalized_steiner_configuration(s, d).line


def _line_through(points: Sequence[HPoint]) -> HLine:
    for a, b in itertools.combinations(points, 2):
        if a != b:
            return join(a, b)
    raise GeometryError("all points coincide")


# Salmon-Cayley line: q3 pairs AE*BD*CF with AD*BF*CE so that p3, q3 meet in a
# Kirkman point (the pair as printed repeats p3)
SALMON_CAYLEY_P = (("AB DF CE", "AC EF BD"), ("AC BF DE", "AE BC DF"),
                   ("AC BE DF", "AE BD CF"), ("AB DE CF", "AF BE CD"))
SALMON_CAYLEY_Q = (("AB DF CE", "AE BF CD"), ("AC BF DE", "AF BD CE"),
                   ("AE BD CF", "AD BF CE"), ("AB DE CF", "AD BC EF"))


@dataclass
class SalmonCayleyConfiguration:
    line: HLine
    points: list[HPoint]  # three Kirkman points, then the Steiner point
    p_lines: list[HLine]
    q_lines: list[HLine]

    def cross(self, i: int, j: int) -> HPoint:
        """``p_i`` meet ``q_j`` (1-based, as in the proof)."""
        return meet(self.p_lines[i - 1], self.q_lines[j - 1])


def salmon_cayley_configuration(s) -> SalmonCayleyConfiguration:
    s = _as_hex(s)
    p = [pascal_line_of(s, a, b) for a, b in SALMON_CAYLEY_P]
    q = [pascal_line_of(s, a, b) for a, b in SALMON_CAYLEY_Q]
    pts = [meet(a, b) for a, b in zip(p, q)]
    if not collinear(pts):
        raise CollinearityFailure("Salmon-Cayley points are not collinear")
    return SalmonCayleyConfiguration(_line_through(pts), pts, p, q)


def salmon_cayley_line(s) -> tuple[HLine, list[HPoint]]:
    cfg = salmon_cayley_configuration(s)
    return cfg.line, cfg.points


def salmon_cayley_triples() -> list[tuple[Matching, Matching, Matching]]:
    """Matching triples of the four points on the Salmon-Cayley line."""
    out = []
    for (a, b), (c, d) in zip(SALMON_CAYLEY_P, SALMON_CAYLEY_Q):
        ms = {matching(a), matching(b), matching(c), matching(d)}
        out.append(tuple(sorted(ms)))
    return out


@dataclass
class AuxiliaryConics:
    steiner_conic: Conic
    kirkman_conic: Conic
    lemma45_conic: Conic
    sc_cubic_rank: int
    residual_online_CF: bool
    fits: dict = field(default_factory=dict)


def _fit(points: Sequence[HPoint], name: str) -> Conic:
    if not coconic(points):
        raise ConicFitFailure(f"{name}: six points are not on one conic")
    for five in itertools.combinations(points, 5):
        try:
            return conic_through(list(five))
        except GeometryError:
            continue
    raise ConicFitFailure(f"{name}: points do not determine a conic")


def auxiliary_conics(s) -> AuxiliaryConics:
    """Steiner, Kirkman and C-F conics, the Salmon-Cayley cubic, and the CF pencil claim."""
    s = _as_hex(s)
    cfg = salmon_cayley_configuration(s)
    x = cfg.cross
    steiner_pts = [x(1, 2), x(1, 4), x(2, 1), x(2, 4), x(4, 1), x(4, 2)]
    kirkman_pts = [x(3, 1), x(1, 3), x(2, 3), x(3, 2), x(1, 2), x(2, 1)]
    cf_pts = [x(3, 1), x(1, 3), x(2, 3), x(3, 2), s["C"], s["F"]]
    steiner = _fit(steiner_pts, "Steiner conic")
    kirkman = _fit(kirkman_pts, "Kirkman conic")
    cf = _fit(cf_pts, "C-F conic")
    twelve = [x(i, j) for i in range(1, 5) for j in range(1, 5) if i != j]
    cubic_rank = on_cubic_rank(twelve)
    pair = poly_mul(join(x(1, 2), x(2, 1)).form(), s.line("CF").form())
    online = in_pencil(pair, pencil_of(steiner.form, kirkman.form))
    return AuxiliaryConics(steiner, kirkman, cf, cubic_rank, online,
                           fits={"steiner": True, "kirkman": True, "lemma45": True})


# --- census --------------------------------------------------------------


@dataclass
class IncidenceReport:
    counts: dict
    pascal_lines: dict  # ordering -> line
    steiner_points: dict  # triple key -> point
    kirkman_points: dict
    steiner_pluecker_lines: dict  # matching -> line
    cayley_salmon_lines: list  # (line, kirkman keys, steiner key)
    salmon_points: list
    cross_checks: dict

    def to_json_obj(self) -> dict:
        def pt(p):
            return [str(c) for c in p.coords]
        return {
            "counts": self.counts,
            "pascal_lines": {k: pt(v) for k, v in sorted(self.pascal_lines.items())},
            "steiner_points": {k: pt(v) for k, v in sorted(self.steiner_points.items())},
            "kirkman_points": {k: pt(v) for k, v in sorted(self.kirkman_points.items())},
            "steiner_pluecker_lines": {k: pt(v) for k, v in sorted(self.steiner_pluecker_lines.items())},
            "cayley_salmon_lines": [{"line": pt(l), "kirkman": ks, "steiner": st}
                                    for l, ks, st in self.cayley_salmon_lines],
            "salmon_points": [pt(p) for p in self.salmon_points],
            "cross_checks": self.cross_checks,
        }


EXPECTED_COUNTS = {"pascal_lines": 60, "steiner_points": 20, "kirkman_points": 60,
                   "steiner_pluecker_lines": 15, "cayley_salmon_lines": 20, "salmon_points": 15}


def triple_key(triple) -> str:
    return "|".join(" ".join(m) for m in sorted(triple))


def _cayley_salmon_structures() -> list[tuple]:
    """S6-orbit of the Salmon-Cayley incidence pattern (3 Kirkman + 1 Steiner triples)."""
    base = salmon_cayley_triples()
    seen = set()
    out = []
    for perm in itertools.permutations(LABELS):
        mp = dict(zip(LABELS, perm))

        def img(m):
            return matching(" ".join(mp[e[0]] + mp[e[1]] for e in m))
        struct = tuple(tuple(sorted(img(m) for m in t)) for t in base)
        key = frozenset(struct)
        if key not in seen:
            seen.add(key)
            out.append(struct)
    return out


def census(s, certify: bool = True) -> IncidenceReport:
    """Full classical incidence census of a hexagon scene.

    Steiner and Kirkman points come from their defining matching triples;
    clustering of all pairwise Pascal-line meets is a cross-check.
    """
    s = _as_hex(s)
    orderings = hex_orderings()
    pascal: dict[str, HLine] = {}
    by_pair: dict[tuple, HLine] = {}
    mismatches = 0
    for o in orderings:
        line = classical_pascal_line(s, o)
        pascal[o.order] = line
        m1, m2 = o.matchings()
        by_pair[(m1, m2)] = line
        if certify and generalized_pascal_line(s, s.cubic(m1), s.cubic(m2)) != line:
            mismatches += 1

    def pl(a, b):
        return by_pair[tuple(sorted((a, b)))]

    triples = classical_triples()
    points: dict[str, dict[str, HPoint]] = {"steiner": {}, "kirkman": {}}
    for kind, ts in triples.items():
        for t in ts:
            lines = [pl(t[0], t[1]), pl(t[0], t[2]), pl(t[1], t[2])]
            if not concurrent(lines):
                raise ConcurrencyFailure(f"{kind} triple {t} is not concurrent")
            points[kind][triple_key(t)] = meet(lines[0], lines[1])
    steiner, kirkman = points["steiner"], points["kirkman"]

    all_lines = list(pascal.values())

    def lines_through(p):
        return sum(1 for l in all_lines if l.contains(p))

    # cross-check: cluster all pairwise meets
    multiplicity: dict[HPoint, set] = defaultdict(set)
    for (i, a), (j, b) in itertools.combinations(enumerate(all_lines), 2):
        q = meet(a, b)
        multiplicity[q].update((i, j))
    triple_points = {p for p, ls in multiplicity.items() if len(ls) == 3}
    defined = set(steiner.values()) | set(kirkman.values())

    # Steiner-Pluecker lines: the Steiner points whose triples share a matching
    sp_lines: dict[str, HLine] = {}
    for m in all_matchings():
        pts = [steiner[triple_key(t)] for t in triples["steiner"] if m in t]
        if not collinear(pts):
            raise CollinearityFailure(f"Steiner points through {m} are not collinear")
        sp_lines[" ".join(m)] = _line_through(pts)

    cs_lines = []
    for struct in _cayley_salmon_structures():
        ks = [triple_key(t) for t in struct if triple_key(t) in kirkman]
        st = [triple_key(t) for t in struct if triple_key(t) in steiner]
        pts = [kirkman[k] for k in ks] + [steiner[k] for k in st]
        if not collinear(pts):
            raise CollinearityFailure("Cayley-Salmon points are not collinear")
        cs_lines.append((_line_through(pts), sorted(ks), st[0] if st else None))
    cs_lines.sort(key=lambda t: t[0].coeffs)

    salmon_lines: dict[HPoint, set] = defaultdict(set)
    for (i, (a, _, _)), (j, (b, _, _)) in itertools.combinations(enumerate(cs_lines), 2):
        salmon_lines[meet(a, b)].update((i, j))
    # Salmon points: concurrences of three or more Cayley-Salmon lines
    salmon = sorted(p for p, ls in salmon_lines.items() if len(ls) >= 3)

    counts = {
        "pascal_lines": len(set(all_lines)),
        "steiner_points": len(set(steiner.values())),
        "kirkman_points": len(set(kirkman.values())),
        "steiner_pluecker_lines": len(set(sp_lines.values())),
        "cayley_salmon_lines": len({l for l, _, _ in cs_lines}),
        "salmon_points": len(salmon),
    }
    checks = {
        "certified_pascal_mismatches": mismatches if certify else None,
        "triple_points_from_clustering": len(triple_points),
        "clustering_matches_definitions": triple_points == defined,
        "steiner_lines_per_point": sorted({lines_through(p) for p in steiner.values()}),
        "kirkman_lines_per_point": sorted({lines_through(p) for p in kirkman.values()}),
        "steiner_points_per_sp_line": sorted({sum(l.contains(p) for p in steiner.values())
                                              for l in sp_lines.values()}),
        "sp_lines_per_steiner_point": sorted({sum(l.contains(p) for l in sp_lines.values())
                                              for p in steiner.values()}),
        "kirkman_per_cs_line": sorted({sum(l.contains(p) for p in kirkman.values())
                                       for l, _, _ in cs_lines}),
        "steiner_per_cs_line": sorted({sum(l.contains(p) for p in steiner.values())
                                       for l, _, _ in cs_lines}),
        "cs_lines_per_salmon_point": sorted({sum(l.contains(p) for l, _, _ in cs_lines)
                                             for p in salmon}),
    }
    report = IncidenceReport(counts, pascal, steiner, kirkman, sp_lines, cs_lines, salmon, checks)
    expected_checks = {
        "certified_pascal_mismatches": 0 if certify else None,
        "triple_points_from_clustering": 80,
        "clustering_matches_definitions": True,
        "steiner_lines_per_point": [3],
        "kirkman_lines_per_point": [3],
        "steiner_points_per_sp_line": [4],
        "sp_lines_per_steiner_point": [3],
        "kirkman_per_cs_line": [3],
        "steiner_per_cs_line": [1],
        "cs_lines_per_salmon_point": [4],
    }
    diff = {k: {"expected": v, "got": counts[k]} for k, v in EXPECTED_COUNTS.items() if counts[k] != v}
    diff.update({k: {"expected": v, "got": checks[k]} for k, v in expected_checks.items()
                 if checks[k] != v})
    if diff:
        raise CensusMismatch("hexagon census disagrees with the classical counts", diff)
    return report
