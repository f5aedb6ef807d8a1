"""Mystic conics of inscribed octagons and the 2n-gon generalization."""

from __future__ import annotations

import itertools
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .decomposition import (DependentCurves, Pencil, ResidualCertificate, common_member,
                            in_pencil, pencil_of, record, residual_curve)
from .exact_linear import HomoPoly, poly_mul, product, rank, stacked_rank
from .hexagon import CensusMismatch, all_matchings, cycle_lengths, matching
from .projective import Conic, GeometryError, HLine, HPoint, coconic, join, meet
from .scene import Scene, labels, oct_scene

LABELS = "ABCDEFGH"

Matching = tuple


class PencilViolation(AssertionError):
    """Three mystic conics that must share a pencil do not."""


class NoCommonMember(GeometryError):
    pass


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("MYSTICUM_THREADS")
    return max(1, int(env)) if env else 1


def _pmap(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    size = -(-len(items) // (workers * 4))
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_apply_chunk, [(fn, c) for c in chunks])
        return [y for part in parts for y in part]


def _apply_chunk(arg):
    fn, chunk = arg
    return [fn(x) for x in chunk]


# --- combinatorics ---------------------------------------------------------


def is_compatible(m1: Matching, m2: Matching, labels_: str = LABELS) -> bool:
    """Union of the two matchings is one Hamiltonian cycle."""
    return not set(m1) & set(m2) and cycle_lengths(m1 + m2, labels_) == [len(labels_)]


def is_two_quadrilateral(m1: Matching, m2: Matching) -> bool:
    return not set(m1) & set(m2) and cycle_lengths(m1 + m2, LABELS) == [4, 4]


def canonical_cycle(order: Sequence[str]) -> str:
    order = list(order)
    n = len(order)
    return min("".join(seq[i:] + seq[:i]) for seq in (order, order[::-1]) for i in range(n))


@dataclass(frozen=True)
class OctOrdering:
    """Cyclic labeling of an octagon up to the dihedral group of order 16."""

    order: str

    def __init__(self, order: str):
        if sorted(order) != sorted(LABELS):
            raise ValueError(f"{order!r} is not a permutation of {LABELS}")
        object.__setattr__(self, "order", canonical_cycle(order))

    def matchings(self) -> tuple[Matching, Matching]:
        return cycle_matchings(self.order)


def cycle_matchings(order: str) -> tuple[Matching, Matching]:
    """The two alternating edge matchings of an even cycle, sorted."""
    n = len(order)
    m1 = matching(" ".join(order[i] + order[(i + 1) % n] for i in range(0, n, 2)))
    m2 = matching(" ".join(order[i] + order[(i + 1) % n] for i in range(1, n, 2)))
    return tuple(sorted((m1, m2)))


def oct_orderings() -> list[OctOrdering]:
    seen = set()
    for p in itertools.permutations(LABELS[1:]):
        if p[0] < p[-1]:
            seen.add(canonical_cycle("A" + "".join(p)))
    return [OctOrdering(o) for o in sorted(seen)]


def two_quadrilateral_pairs() -> list[tuple[Matching, Matching]]:
    ms = all_matchings(LABELS)
    return [(a, b) for a, b in itertools.combinations(ms, 2) if is_two_quadrilateral(a, b)]


def compatible_triples() -> list[tuple[Matching, Matching, Matching]]:
    ms = all_matchings(LABELS)
    nbrs = {m: {x for x in ms if is_compatible(m, x)} for m in ms}
    out = []
    for a, b in itertools.combinations(ms, 2):
        if b not in nbrs[a]:
            continue
        for c in sorted(nbrs[a] & nbrs[b]):
            if c > b:
                out.append((a, b, c))
    return out


# --- scenes ----------------------------------------------------------------


class PolygonScene:
    """``2n`` labeled vertices on the scene conic, with cached side lines."""

    def __init__(self, scene: Scene, expected: int | None = None):
        pts = scene.points
        if expected is not None and len(pts) != expected:
            raise ValueError(f"expected {expected} vertices, got {len(pts)}")
        if len(set(pts.values())) != len(pts):
            raise GeometryError("vertices must be distinct")
        for k, p in pts.items():
            if not scene.conic.contains(p):
                raise GeometryError(f"vertex {k} is not on the conic")
        self.scene = scene
        self._lines: dict[str, HLine] = {}
        self._forms: dict[Matching, HomoPoly] = {}

    @property
    def conic(self) -> Conic:
        return self.scene.conic

    @property
    def labels(self) -> list[str]:
        return list(self.scene.points)

    @property
    def vertices(self) -> list[HPoint]:
        return list(self.scene.points.values())

    def __getitem__(self, label: str) -> HPoint:
        return self.scene.points[label]

    def line(self, edge: str) -> HLine:
        key = "".join(sorted(edge))
        if key not in self._lines:
            self._lines[key] = join(self[key[0]], self[key[1]])
        return self._lines[key]

    def edge_form(self, m: Matching | str) -> HomoPoly:
        """Product of the side lines of a matching."""
        if isinstance(m, str):
            m = matching(m)
        if m not in self._forms:
            self._forms[m] = product(self.line(e).form() for e in m)
        return self._forms[m]

    def __getstate__(self):
        return {"scene": self.scene}

    def __setstate__(self, state):
        self.__init__(state["scene"])


class OctScene(PolygonScene):
    def __init__(self, scene: Scene):
        if sorted(scene.points) != list(LABELS):
            raise ValueError("an octagon scene needs vertices A..H")
        super().__init__(scene, 8)


def _as_oct(s) -> OctScene:
    return s if isinstance(s, OctScene) else OctScene(s)


# --- conics ----------------------------------------------------------------


def mystic_certificate(s, q1: HomoPoly, q2: HomoPoly) -> ResidualCertificate:
    s = _as_oct(s)
    if q1.degree != 4 or q2.degree != 4:
        raise ValueError("mystic conics come from quartics")
    return residual_curve(q1, q2, s.conic, s.vertices)


def mystic_conic(s, q1: HomoPoly, q2: HomoPoly) -> Conic:
    """Conic through the eight residual meets of two quartics."""
    return Conic(mystic_certificate(s, q1, q2).residual)


def matching_conic(s, m1: Matching, m2: Matching) -> Conic:
    s = _as_oct(s)
    return mystic_conic(s, s.edge_form(m1), s.edge_form(m2))


def classical_conic(s, o: OctOrdering | str) -> Conic:
    s = _as_oct(s)
    order = o.order if isinstance(o, OctOrdering) else o
    return matching_conic(s, *cycle_matchings(order))


def residual_meets(s, m1: Matching, m2: Matching) -> list[HPoint]:
    """Meets of side lines from ``m1`` and ``m2`` that share no vertex."""
    s = s if isinstance(s, PolygonScene) else PolygonScene(s)
    return sorted({meet(s.line(a), s.line(b)) for a in m1 for b in m2 if not set(a) & set(b)})


def quadrilateral_matchings(quad1: str, quad2: str, twist: bool = False) -> tuple[Matching, Matching]:
    """Quartic pair of two inscribed quadrilaterals; ``twist`` swaps the second's sides."""
    a, b = cycle_matchings(quad1), cycle_matchings(quad2)
    if twist:
        b = b[::-1]
    return (matching(" ".join(a[0] + b[0])), matching(" ".join(a[1] + b[1])))


# --- censuses --------------------------------------------------------------


def _conic_job(arg):
    scene, m1, m2 = arg
    s = OctScene(scene)
    cert = mystic_certificate(s, s.edge_form(m1), s.edge_form(m2))
    if not cert.verify():
        raise AssertionError("mystic conic certificate failed")
    return (m1, m2), cert


def conic_table(s, pairs: Sequence[tuple[Matching, Matching]],
                workers: int | None = None) -> dict[tuple[Matching, Matching], Conic]:
    s = _as_oct(s)
    jobs = [(s.scene, a, b) for a, b in pairs]
    w = worker_count(workers)
    out = {}
    for key, cert in _pmap(_conic_job, jobs, w):
        if w > 1:
            record(cert)
        out[key] = Conic(cert.residual)
    return out


@dataclass
class ConicCensus:
    matchings: int
    orderings: int
    classical_conics: int
    two_quadrilateral_pairs: int
    two_quadrilateral_conics: int
    overlap: int
    nondegenerate: bool
    conics: dict = field(repr=False, default_factory=dict)  # ordering -> conic
    quad_conics: dict = field(repr=False, default_factory=dict)

    def counts(self) -> dict:
        return {
            "matchings": self.matchings,
            "orderings": self.orderings,
            "classical_conics": self.classical_conics,
            "two_quadrilateral_pairs": self.two_quadrilateral_pairs,
            "two_quadrilateral_conics": self.two_quadrilateral_conics,
            "classical_quadrilateral_overlap": self.overlap,
            "all_nondegenerate": self.nondegenerate,
        }

    def to_json_obj(self) -> dict:
        return {
            "counts": self.counts(),
            "conics": {k: [str(c) for c in v.coeffs] for k, v in sorted(self.conics.items())},
        }


EXPECTED_CONIC_COUNTS = {"matchings": 105, "orderings": 2520, "classical_conics": 2520,
                         "two_quadrilateral_pairs": 630, "two_quadrilateral_conics": 630}


def conic_census(s, workers: int | None = None, strict: bool = True) -> ConicCensus:
    s = _as_oct(s)
    orderings = oct_orderings()
    pairs = [o.matchings() for o in orderings]
    quads = two_quadrilateral_pairs()
    table = conic_table(s, pairs + quads, workers)
    conics = {o.order: table[p] for o, p in zip(orderings, pairs)}
    quad_conics = {p: table[p] for p in quads}
    cset, qset = set(conics.values()), set(quad_conics.values())
    report = ConicCensus(
        matchings=len(all_matchings(LABELS)),
        orderings=len(orderings),
        classical_conics=len(cset),
        two_quadrilateral_pairs=len(quads),
        two_quadrilateral_conics=len(qset),
        overlap=len(cset & qset),
        nondegenerate=all(not c.is_degenerate() for c in cset | qset),
        conics=conics,
        quad_conics=quad_conics,
    )
    if strict:
        got = report.counts()
        diff = {k: {"expected": v, "got": got[k]} for k, v in EXPECTED_CONIC_COUNTS.items()
                if got[k] != v}
        if diff:
            raise CensusMismatch("octagon conic census disagrees", diff)
    return report


@dataclass
class PencilCensus:
    triples: int
    distinct_pencils: int
    pencils_per_conic: dict  # number of pencils -> number of conics
    triples_per_pencil: dict
    compatible_per_matching: list
    pencils: dict = field(repr=False, default_factory=dict)  # canonical pencil -> triples
    conic_of_pair: dict = field(repr=False, default_factory=dict)

    def counts(self) -> dict:
        return {
            "compatible_triples": self.triples,
            "distinct_pencils": self.distinct_pencils,
            "pencils_per_conic": {str(k): v for k, v in sorted(self.pencils_per_conic.items())},
            "triples_per_pencil": {str(k): v for k, v in sorted(self.triples_per_pencil.items())},
            "compatible_per_matching": self.compatible_per_matching,
        }

    def to_json_obj(self) -> dict:
        return {
            "counts": self.counts(),
            "pencils": [{"basis": p.to_json_obj(), "triples": [[" ".join(m) for m in t] for t in ts]}
                        for p, ts in sorted(self.pencils.items(), key=lambda kv: kv[0].basis)],
        }


def _pencil_job(arg):
    triple, conics = arg
    k12, k13, k23 = conics
    p = pencil_of(k12.form, k13.form)
    if not in_pencil(k23.form, p):
        raise PencilViolation(f"triple {triple} violates the pencil property")
    return triple, p


def pencil_census(s, workers: int | None = None, conics: ConicCensus | None = None) -> PencilCensus:
    """Pencils spanned by the three mystic conics of each compatible matching triple."""
    s = _as_oct(s)
    w = worker_count(workers)
    if conics is None:
        conics = conic_census(s, workers=w)
    by_pair = {tuple(sorted(OctOrdering(o).matchings())): c for o, c in conics.conics.items()}
    triples = compatible_triples()
    jobs = [(t, (by_pair[(t[0], t[1])], by_pair[(t[0], t[2])], by_pair[(t[1], t[2])]))
            for t in triples]
    results = _pmap(_pencil_job, jobs, w)
    pencils: dict[Pencil, list] = defaultdict(list)
    per_conic: dict[Conic, set] = defaultdict(set)
    for t, p in results:
        pencils[p].append(t)
        for pair in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            per_conic[by_pair[pair]].add(p)
    ms = all_matchings(LABELS)
    compat = sorted({sum(is_compatible(m, x) for x in ms) for m in ms})
    return PencilCensus(
        triples=len(triples),
        distinct_pencils=len(pencils),
        pencils_per_conic=dict(Counter(len(v) for v in per_conic.values())),
        triples_per_pencil=dict(Counter(len(v) for v in pencils.values())),
        compatible_per_matching=compat,
        pencils=dict(pencils),
        conic_of_pair=by_pair,
    )


# --- Thm 5.6 ---------------------------------------------------------------

# (C index, D index) for X_i and Y_i, zero-based; Y_i uses C_{i+2} D_{i+1}
CYCLIC_PAIRING = (((0, 0), (2, 1)), ((1, 1), (0, 2)), ((2, 2), (1, 0)))


@dataclass
class SteinerConicReport:
    conic: Conic | None
    x: list[Conic]
    y: list[Conic]
    pencils: list[Pencil]


def generalized_steiner_conic_report(s, q: HomoPoly, cs: Sequence[Conic], ds: Sequence[Conic],
                                     pairing=CYCLIC_PAIRING) -> SteinerConicReport:
    s = _as_oct(s)
    if len(cs) != 3 or len(ds) != 3:
        raise ValueError("need three conics on each side")
    first, second = [s[k] for k in "ABCD"], [s[k] for k in "EFGH"]
    for c in cs:
        if any(not c.contains(p) for p in first):
            raise ValueError("each C_i must pass through A, B, C, D")
    for d in ds:
        if any(not d.contains(p) for p in second):
            raise ValueError("each D_i must pass through E, F, G, H")
    if len(set(cs)) < 3 or len(set(ds)) < 3:
        raise ValueError("the three conics on each side must be distinct")
    xs, ys = [], []
    for (xc, xd), (yc, yd) in pairing:
        xs.append(mystic_conic(s, q, poly_mul(cs[xc].form, ds[xd].form)))
        ys.append(mystic_conic(s, q, poly_mul(cs[yc].form, ds[yd].form)))
    pencils = [pencil_of(x.form, y.form) for x, y in zip(xs, ys)]
    member = common_member(pencils)
    return SteinerConicReport(Conic(member) if member is not None else None, xs, ys, pencils)


def generalized_steiner_conic(s, q: HomoPoly, cs: Sequence[Conic], ds: Sequence[Conic],
                              pairing=CYCLIC_PAIRING) -> Conic:
    """Conic through the twelve points ``X_i`` meet ``Y_i``."""
    report = generalized_steiner_conic_report(s, q, cs, ds, pairing)
    if report.conic is None:
        raise NoCommonMember("the three pencils share no conic")
    return report.conic


# --- 2n-gons ---------------------------------------------------------------


@dataclass
class PolygonReport:
    certificates: list[ResidualCertificate]
    residual_rank: int | None  # rank of the stacked residuals for three curves

    @property
    def ok(self) -> bool:
        return all(c.verify() for c in self.certificates) and (
            self.residual_rank is None or self.residual_rank <= 2)


def polygon_general(s, f1: HomoPoly, f2: HomoPoly, f3: HomoPoly | None = None) -> PolygonReport:
    """Residual degree ``n-2`` certificates for degree-``n`` curves through ``2n`` vertices."""
    s = s if isinstance(s, PolygonScene) else PolygonScene(s)
    n = f1.degree
    if len(s.vertices) != 2 * n:
        raise ValueError(f"degree {n} curves need {2 * n} vertices")
    if f3 is None:
        return PolygonReport([residual_curve(f1, f2, s.conic, s.vertices)], None)
    certs = [residual_curve(a, b, s.conic, s.vertices) for a, b in ((f1, f2), (f1, f3), (f2, f3))]
    return PolygonReport(certs, stacked_rank([c.residual for c in certs]))


def polygon_scene(n: int, seed: int) -> Scene:
    """Seeded ``2n``-gon on the unit circle."""
    from .scene import inscribed_scene
    return inscribed_scene(2 * n, seed)


def polygon_matchings(labels_: str, rng) -> tuple[Matching, Matching, Matching]:
    """Three pairwise Hamiltonian matchings of the labels, drawn from ``rng``."""
    ms = all_matchings(labels_)
    while True:
        a = rng.choice(ms)
        b = rng.choice(ms)
        c = rng.choice(ms)
        if all(is_compatible(x, y, labels_) for x, y in ((a, b), (a, c), (b, c))):
            return a, b, c


def random_conic_through(points: Sequence[HPoint], rng, avoid: Sequence[Conic] = ()) -> Conic:
    """Non-degenerate conic from the pencil through four points, drawn from ``rng``."""
    from .projective import curves_through
    basis = curves_through(points, 2)
    while True:
        coeffs = [rng.nonzero_int(9) for _ in basis]
        form = HomoPoly(2, [sum(c * b.coeffs[i] for c, b in zip(coeffs, basis)) for i in range(6)])
        if form.is_zero():
            continue
        c = Conic(form)
        if not c.is_degenerate() and c not in avoid:
            return c


def random_quartic_through(s, rng) -> HomoPoly:
    """Quartic through the eight vertices, not divisible by the scene conic."""
    from .exact_linear import NotDivisible, poly_quotient
    from .projective import curves_through
    s = _as_oct(s)
    basis = curves_through(s.vertices, 4)
    while True:
        coeffs = [rng.nonzero_int(5) for _ in basis]
        q = HomoPoly(4, [sum(c * b.coeffs[i] for c, b in zip(coeffs, basis)) for i in range(15)])
        try:
            poly_quotient(q, s.conic.form)
        except NotDivisible:
            return q.canonical()


@dataclass
class SteinerConicInstance:
    scene: OctScene
    q: HomoPoly
    cs: list  # C_1..C_4 through A, B, C, D
    ds: list  # D_1..D_4 through E, F, G, H


def steiner_conic_instance(seed: int, quartic: str = "product",
                           scene: Scene | None = None) -> SteinerConicInstance:
    """Seeded inputs for the generalized Steiner conic.

    ``quartic="product"`` takes ``Q = C_4 D_4``; ``"random"`` draws ``Q``
    from the quartics through the vertices.
    """
    from .scene import stream
    s = OctScene(scene if scene is not None else oct_scene(seed))
    rng = stream(seed, "steiner-conic")
    cs: list[Conic] = []
    ds: list[Conic] = []
    for _ in range(4):
        cs.append(random_conic_through([s[k] for k in "ABCD"], rng, cs))
        ds.append(random_conic_through([s[k] for k in "EFGH"], rng, ds))
    if quartic == "product":
        q = poly_mul(cs[3].form, ds[3].form)
    elif quartic == "random":
        q = random_quartic_through(s, rng)
    else:
        raise ValueError("quartic must be 'product' or 'random'")
    return SteinerConicInstance(s, q, cs, ds)
