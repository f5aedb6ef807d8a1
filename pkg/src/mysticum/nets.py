"""Nets of lines and of conics, with validators reporting each condition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .decomposition import DependentCurves, Pencil, in_pencil, pencil_of
from .exact_linear import rank
from .hexagon import (STEINER_LINE_CUBIC, STEINER_LINE_P, STEINER_LINE_Q, HexScene,
                      generalized_steiner_configuration)
from .octagon import CYCLIC_PAIRING, generalized_steiner_conic_report, steiner_conic_instance
from .projective import Conic, HLine, HPoint, dualize, meet


class NetViolation(ValueError):
    def __init__(self, condition: str, detail: str):
        super().__init__(f"{condition}: {detail}")
        self.condition = condition
        self.detail = detail


# --- line nets -------------------------------------------------------------


@dataclass
class LineNet:
    classes: list[list[HLine]]
    points: list[HPoint] = field(default_factory=list)


def net_points(classes: Sequence[Sequence[HLine]]) -> list[HPoint]:
    """All meets of a line of the first class with a line of the second."""
    return sorted({meet(a, b) for a in classes[0] for b in classes[1] if a != b})


def validate_line_net(net: LineNet) -> LineNet:
    """Raise :class:`NetViolation` unless each net point is on one line per class."""
    if len(net.classes) < 3:
        raise NetViolation("classes", "a line net needs at least three classes")
    flat = [l for c in net.classes for l in c]
    if len(set(flat)) != len(flat):
        raise NetViolation("disjoint", "a line occurs twice")
    pts = net.points or net_points(net.classes)
    for p in pts:
        for k, cls in enumerate(net.classes):
            n = sum(l.contains(p) for l in cls)
            if n != 1:
                raise NetViolation("incidence", f"{p} lies on {n} lines of class {k + 1}")
    d = len(net.classes[0])
    if any(len(c) != d for c in net.classes) or len(pts) != d * d:
        raise NetViolation("cardinality", f"classes {[len(c) for c in net.classes]}, {len(pts)} points")
    net.points = pts
    return net


def build_line_net(s) -> LineNet:
    """The (3,4) net from the generalized Steiner line of ``l(AF) l(BE) l(CD)``."""
    s = s if isinstance(s, HexScene) else HexScene(s)
    cfg = generalized_steiner_configuration(s, s.cubic(STEINER_LINE_CUBIC))
    third = [s.line("AF"), s.line("BE"), s.line("CD"), cfg.line]
    return validate_line_net(LineNet([list(cfg.p_lines), list(cfg.q_lines), third]))


@dataclass
class PointNet:
    """Dual of a line net: classes of points and the lines through one of each."""

    classes: list[list[HPoint]]
    lines: list[HLine]


def dual_line_net(net: LineNet) -> PointNet:
    return PointNet([[dualize(l) for l in c] for c in net.classes],
                    [dualize(p) for p in net.points])


def validate_point_net(net: PointNet) -> bool:
    for l in net.lines:
        for cls in net.classes:
            if sum(l.contains(p) for p in cls) != 1:
                return False
    d = len(net.classes[0])
    return all(len(c) == d for c in net.classes) and len(net.lines) == d * d


# --- conic nets ------------------------------------------------------------


@dataclass
class ConicNet:
    classes: list[list[Conic]]
    pencils: list[Pencil]


def cross_pencils(classes: Sequence[Sequence[Conic]]) -> list[Pencil]:
    """Every pencil spanned by two conics from different classes."""
    out = set()
    for i, j in itertools.combinations(range(len(classes)), 2):
        for a in classes[i]:
            for b in classes[j]:
                if a != b:
                    out.add(pencil_of(a.form, b.form))
    return sorted(out, key=lambda p: p.basis)


@dataclass
class NetReport:
    k: int
    conditions: dict  # name -> bool
    details: dict
    degree: int | None
    pencil_count: int

    @property
    def valid(self) -> bool:
        return all(self.conditions.values())

    def to_json_obj(self) -> dict:
        return {"k": self.k, "valid": self.valid, "conditions": self.conditions,
                "details": self.details, "degree": self.degree, "pencils": self.pencil_count}


def validate_conic_net(net: ConicNet) -> NetReport:
    k = len(net.classes)
    if k < 2:
        raise ValueError("a net needs at least two classes")
    details: dict = {}
    flat = [c for cls in net.classes for c in cls]
    disjoint = len(set(flat)) == len(flat) and all(cls for cls in net.classes)
    if not disjoint:
        details["disjoint"] = "a conic is repeated or a class is empty"

    pencil_keys = set(net.pencils)
    missing = 0
    for i, j in itertools.combinations(range(k), 2):
        for a in net.classes[i]:
            for b in net.classes[j]:
                if a == b or pencil_of(a.form, b.form) not in pencil_keys:
                    missing += 1
    if missing:
        details["cross_pencils"] = f"{missing} cross-class pairs span pencils outside the set"

    bad = []
    for n, p in enumerate(net.pencils):
        for ci, cls in enumerate(net.classes):
            hits = sum(in_pencil(c.form, p) for c in set(cls))
            if hits != 1:
                bad.append((n, ci + 1, hits))
    if bad:
        details["one_per_class"] = [{"pencil": n, "class": c, "members": h} for n, c, h in bad]

    conditions = {"disjoint": disjoint, "cross_pencils": missing == 0, "one_per_class": not bad}
    degree = None
    if k >= 3:
        sizes = [len(c) for c in net.classes]
        equal = len(set(sizes)) == 1
        conditions["equal_cardinality"] = equal
        if equal:
            degree = sizes[0]
        conditions["pencils_square"] = equal and len(pencil_keys) == sizes[0] ** 2
        if not conditions["pencils_square"]:
            details["pencils_square"] = {"sizes": sizes, "pencils": len(pencil_keys)}
    return NetReport(k, conditions, details, degree, len(pencil_keys))


@dataclass
class ConicNetExample:
    net: ConicNet
    report: NetReport
    steiner_conic: Conic | None
    labels: dict  # conic -> name


def example_conic_net(seed: int, pairing=CYCLIC_PAIRING, scene=None) -> ConicNetExample:
    """(3,3) conic net from the generalized Steiner conic with ``Q = C_4 D_4``."""
    inst = steiner_conic_instance(seed, "product", scene)
    rep = generalized_steiner_conic_report(inst.scene, inst.q, inst.cs[:3], inst.ds[:3], pairing)
    third = [inst.cs[3], inst.ds[3]] + ([rep.conic] if rep.conic is not None else [])
    classes = [list(rep.x), list(rep.y), third]
    try:
        pencils = cross_pencils(classes)
    except DependentCurves:
        pencils = []
    net = ConicNet(classes, pencils)
    names = {}
    for i, c in enumerate(rep.x):
        names[c] = f"X{i + 1}"
    for i, c in enumerate(rep.y):
        names[c] = f"Y{i + 1}"
    names[inst.cs[3]], names[inst.ds[3]] = "C4", "D4"
    if rep.conic is not None:
        names[rep.conic] = "S"
    return ConicNetExample(net, validate_conic_net(net), rep.conic, names)


# --- P^5 model -------------------------------------------------------------


@dataclass
class P5Model:
    """Conics as points of P^5, pencils as lines (2-planes of coefficient vectors)."""

    points: list[list[tuple]]
    lines: list[tuple[tuple, tuple]]
    valid: bool


def _on_line(v: tuple, line: tuple[tuple, tuple]) -> bool:
    return rank([line[0], line[1], v]) == 2


def net_as_p5(net: ConicNet) -> P5Model:
    points = [[tuple(c.coeffs) for c in cls] for cls in net.classes]
    lines = [p.basis for p in net.pencils]
    flat = [v for cls in points for v in cls]
    ok = len(set(flat)) == len(flat)
    for i, j in itertools.combinations(range(len(points)), 2):
        for a in points[i]:
            for b in points[j]:
                if not any(_on_line(a, l) and _on_line(b, l) for l in lines):
                    ok = False
    for l in lines:
        for cls in points:
            if sum(_on_line(v, l) for v in cls) != 1:
                ok = False
    return P5Model(points, lines, ok)
