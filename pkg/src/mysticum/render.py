"""SVG figures from a floating-point view of exact scenes.

Nothing here feeds a verdict.  ``residual_points_float`` locates the
(generally irrational) residual points numerically so they can be drawn as
markers and compared against their certified curves.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .decomposition import ResidualCertificate
from .exact_linear import HomoPoly, monomials, restrict_to_line
from .projective import UNIT_CIRCLE, Conic, HLine, HPoint
from .scene import Scene

DEFAULT_VIEWPORT = (-4.0, 4.0, -4.0, 4.0)
SIZE = 800

PALETTE = {
    "axes": "#cccccc",
    "base": "#000000",
    "pascal": "#1f77b4",
    "steiner": "#d62728",
    "kirkman": "#2ca02c",
    "mystic": "#9467bd",
    "residual": "#ff7f0e",
    "net-class-1": "#8c564b",
    "net-class-2": "#e377c2",
    "net-class-3": "#17becf",
    "point": "#000000",
}


class ConvergenceFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class Overlay:
    obj: object  # HLine, Conic, HPoint or a float (x, y) pair
    role: str = "pascal"
    label: str | None = None


def _floats(vec) -> np.ndarray:
    """Float view of an integer/rational vector, scaled to max-abs 1 first."""
    vals = [Fraction(v) for v in vec]
    m = max((abs(v) for v in vals), default=Fraction(0)) or Fraction(1)
    return np.array([float(v / m) for v in vals])


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


class _Canvas:
    def __init__(self, viewport):
        self.x0, self.x1, self.y0, self.y1 = viewport
        self.parts: list[str] = []
        self.counts: dict[str, int] = {}

    def sx(self, x: float) -> float:
        return (x - self.x0) / (self.x1 - self.x0) * SIZE

    def sy(self, y: float) -> float:
        return (self.y1 - y) / (self.y1 - self.y0) * SIZE

    def inside(self, x: float, y: float, pad: float = 0.0) -> bool:
        return self.x0 - pad <= x <= self.x1 + pad and self.y0 - pad <= y <= self.y1 + pad

    def add(self, kind: str, text: str):
        self.parts.append(text)
        self.counts[kind] = self.counts.get(kind, 0) + 1


def clip_line(line: np.ndarray, viewport) -> tuple[tuple[float, float], tuple[float, float]] | None:
    """Segment of ``a x + b y + c = 0`` inside the viewport box, if any."""
    a, b, c = line
    x0, x1, y0, y1 = viewport
    pts = []
    if abs(b) > 1e-15:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 - 1e-12 <= y <= y1 + 1e-12:
                pts.append((x, y))
    if abs(a) > 1e-15:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 - 1e-12 <= x <= x1 + 1e-12:
                pts.append((x, y))
    uniq = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-12 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


_PROBE_LINES = (((0, 0, 1), (1, 0, 0)), ((0, 0, 1), (0, 1, 0)), ((1, 0, 0), (0, 1, 0)),
                ((1, 1, 1), (1, -2, 0)), ((0, 1, 1), (1, 0, 0)), ((2, -1, 3), (1, 3, -1)))


def _real_points(m: np.ndarray) -> list[np.ndarray]:
    out = []
    for base, direction in _PROBE_LINES:
        p = _real_point(m, ((base, direction),))
        if p is not None:
            out.append(p)
    return out


def _real_point(m: np.ndarray, probes=_PROBE_LINES) -> np.ndarray | None:
    """Some real point of the conic with matrix ``m``, by solving along fixed lines."""
    for base, direction in probes:
        p, q = np.array(base, float), np.array(direction, float)
        # (p + s q)^T m (p + s q) = 0
        a, b, c = q @ m @ q, 2 * (p @ m @ q), p @ m @ p
        if abs(a) < 1e-14:
            if abs(b) > 1e-14:
                return p - (c / b) * q
            continue
        disc = b * b - 4 * a * c
        if disc >= 0:
            s = (-b + math.sqrt(disc)) / (2 * a)
            return p + s * q
    return None


def conic_polylines(conic: Conic, viewport, samples: int = 720) -> list[list[tuple[float, float]]]:
    """Affine polylines tracing a conic, split where it crosses the line at infinity."""
    if conic == UNIT_CIRCLE:
        pts = [(math.cos(2 * math.pi * k / samples), math.sin(2 * math.pi * k / samples))
               for k in range(samples + 1)]
        return [pts]
    a, b, c, d, e, f = _floats(conic.coeffs)
    m = np.array([[a, b / 2, c / 2], [b / 2, d, e / 2], [c / 2, e / 2, f]])
    p0 = _real_point(m)
    if p0 is None:
        return []
    runs: list[list[tuple[float, float]]] = []
    cur: list[tuple[float, float]] = []
    prev_sign = 0
    span = max(viewport[1] - viewport[0], viewport[3] - viewport[2])
    for k in range(samples + 1):
        th = math.pi * k / samples
        r = np.array([math.cos(th), math.sin(th), 0.0])
        x = (r @ m @ r) * p0 - 2 * (p0 @ m @ r) * r
        if abs(x[2]) < 1e-12 * max(1.0, np.abs(x).max()):
            if len(cur) > 1:
                runs.append(cur)
            cur, prev_sign = [], 0
            continue
        sign = 1 if x[2] > 0 else -1
        px, py = x[0] / x[2], x[1] / x[2]
        far = abs(px) > 50 * span or abs(py) > 50 * span
        if (prev_sign and sign != prev_sign) or far:
            if len(cur) > 1:
                runs.append(cur)
            cur = []
        prev_sign = sign
        if not far:
            cur.append((px, py))
    if len(cur) > 1:
        runs.append(cur)
    return runs


def render_scene(s: Scene | None, overlays: Sequence[Overlay] = (), viewport=DEFAULT_VIEWPORT,
                 title: str | None = None) -> str:
    """Deterministic SVG document."""
    cv = _Canvas(viewport)
    for x, y, x2, y2 in ((viewport[0], 0, viewport[1], 0), (0, viewport[2], 0, viewport[3])):
        cv.add("axis", f'<line class="axes" x1="{_fmt(cv.sx(x))}" y1="{_fmt(cv.sy(y))}" '
                       f'x2="{_fmt(cv.sx(x2))}" y2="{_fmt(cv.sy(y2))}" stroke="{PALETTE["axes"]}" '
                       f'stroke-width="1"/>')
    items = list(overlays)
    if s is not None:
        items = [Overlay(s.conic, "base")] + items + [Overlay(p, "point", k) for k, p in s.points.items()]
    for ov in items:
        color = PALETTE.get(ov.role, "#444444")
        obj = ov.obj
        if isinstance(obj, HLine):
            seg = clip_line(_floats(obj.coeffs), viewport)
            if seg is None:
                continue
            (xa, ya), (xb, yb) = seg
            cv.add("line", f'<line class="{ov.role}" x1="{_fmt(cv.sx(xa))}" y1="{_fmt(cv.sy(ya))}" '
                           f'x2="{_fmt(cv.sx(xb))}" y2="{_fmt(cv.sy(yb))}" stroke="{color}" '
                           f'stroke-width="1"/>')
        elif isinstance(obj, Conic):
            for run in conic_polylines(obj, viewport):
                if not any(cv.inside(x, y, 1.0) for x, y in run):
                    continue
                pts = " ".join(f"{_fmt(cv.sx(x))},{_fmt(cv.sy(y))}" for x, y in run)
                cv.add("conic", f'<polyline class="{ov.role}" points="{pts}" fill="none" '
                                f'stroke="{color}" stroke-width="1.5"/>')
        else:
            if isinstance(obj, HPoint):
                aff = obj.affine()
                if aff is None:
                    continue
                x, y = float(aff[0]), float(aff[1])
            else:
                x, y = obj
            if not cv.inside(x, y):
                continue
            cv.add("point", f'<circle class="{ov.role}" cx="{_fmt(cv.sx(x))}" cy="{_fmt(cv.sy(y))}" '
                            f'r="3" fill="{color}"/>')
            if ov.label:
                cv.add("label", f'<text x="{_fmt(cv.sx(x) + 5)}" y="{_fmt(cv.sy(y) - 5)}" '
                                f'font-size="12" font-family="sans-serif">{ov.label}</text>')
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">')
    body = [head, '<rect width="100%" height="100%" fill="white"/>']
    if title:
        body.append(f"<title>{title}</title>")
    body.extend(cv.parts)
    body.append("</svg>")
    return "\n".join(body) + "\n"


# --- numeric residual points ----------------------------------------------


def _coeff_array(f: HomoPoly) -> np.ndarray:
    return _floats(f.coeffs)


def _eval(coeffs: np.ndarray, d: int, p: np.ndarray) -> float:
    return float(sum(c * p[0] ** i * p[1] ** j * p[2] ** k
                     for c, (i, j, k) in zip(coeffs, monomials(d))))


def _grad(coeffs: np.ndarray, d: int, p: np.ndarray) -> np.ndarray:
    g = np.zeros(3)
    for c, m in zip(coeffs, monomials(d)):
        for v in range(3):
            if m[v]:
                e = list(m)
                e[v] -= 1
                g[v] += c * m[v] * p[0] ** e[0] * p[1] ** e[1] * p[2] ** e[2]
    return g


def relative_residual(f: HomoPoly, p: np.ndarray) -> float:
    c = _coeff_array(f)
    q = p / np.linalg.norm(p)
    return abs(_eval(c, f.degree, q)) / np.abs(c).sum()


def _newton(fs: Sequence[HomoPoly], p: np.ndarray, steps: int = 50) -> np.ndarray:
    """Refine a projective point on the first two curves (with ``|p| = 1``)."""
    cs = [(_coeff_array(f), f.degree) for f in fs[:2]]
    p = p / np.linalg.norm(p)
    for _ in range(steps):
        rows = [_grad(c, d, p) for c, d in cs] + [p]
        rhs = [-_eval(c, d, p) for c, d in cs] + [0.0]
        try:
            dp = np.linalg.solve(np.array(rows), np.array(rhs))
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure("singular Newton step") from exc
        p = p + dp
        p = p / np.linalg.norm(p)
        if np.linalg.norm(dp) < 1e-15:
            break
    return p


def residual_points_float(d1: HomoPoly, d2: HomoPoly, cert: ResidualCertificate | None,
                          tol: float = 1e-9) -> list[np.ndarray]:
    """Real residual intersection points as unit-norm projective float vectors."""
    if cert is None or not cert.verify():
        raise ValueError("a valid certificate is required")
    r = cert.residual
    if r.degree == 1:
        line = HLine(r.coeffs)
        a, b, c = line.coeffs
        p = [(b, -a, 0), (c, 0, -a), (0, c, -b)]
        p = [v for v in p if any(v)]
        base = p[0]
        direction = next(v for v in p[1:] if np.linalg.matrix_rank(np.array([base, v], float)) == 2)
        poly = [float(Fraction(x)) for x in restrict_to_line(d1, base, direction)]
        scale = max(abs(x) for x in poly) or 1.0
        roots = np.roots([x / scale for x in reversed(poly)]) if any(poly[1:]) else []
        cands = [np.array(base, float) + complex(t).real * np.array(direction, float)
                 for t in roots if abs(complex(t).imag) < 1e-2 * max(1.0, abs(t))]
        if abs(poly[-1]) < 1e-300:
            cands.append(np.array(direction, float))
    elif r.degree == 2:
        cands = _conic_candidates(d1, Conic(r))
    else:
        raise ValueError("only residual lines and conics are located numerically")
    out = []
    for c in cands:
        try:
            p = _newton([d1, r], c)
        except ConvergenceFailure:
            continue
        # spurious (complex) candidates do not converge onto both curves
        if max(relative_residual(d1, p), relative_residual(r, p)) > tol:
            continue
        if not any(min(np.linalg.norm(p - q), np.linalg.norm(p + q)) < 1e-6 for q in out):
            out.append(p)
    return out


def _conic_candidates(d1: HomoPoly, conic: Conic) -> list[np.ndarray]:
    a, b, c, d, e, f = _floats(conic.coeffs)
    m = np.array([[a, b / 2, c / 2], [b / 2, d, e / 2], [c / 2, e / 2, f]])
    out = []
    for p0 in _real_points(m):
        out.extend(_candidates_from(d1, m, p0))
    return out


def _candidates_from(d1: HomoPoly, m: np.ndarray, p0: np.ndarray) -> list[np.ndarray]:
    from numpy.polynomial import polynomial as P
    pm = p0 @ m
    rmr = np.array([m[0, 0], 2 * m[0, 1], m[1, 1]])  # r^T m r with r = (1, t, 0)
    pmr = np.array([pm[0], pm[1]])
    # X(t) = rmr * p0 - 2 pmr * r
    xs = [P.polysub(rmr * p0[0], 2 * pmr),
          P.polysub(rmr * p0[1], 2 * P.polymul(pmr, [0.0, 1.0])),
          rmr * p0[2]]
    total = np.zeros(1)
    for c, (i, j, k) in zip(_coeff_array(d1), monomials(d1.degree)):
        term = np.array([c])
        for x, e in zip(xs, (i, j, k)):
            for _ in range(e):
                term = P.polymul(term, x)
        total = P.polyadd(total, term)
    total = total / (np.abs(total).max() or 1.0)
    roots = P.polyroots(total) if len(total) > 1 else []

    def point(t):
        r = np.array([1.0, t, 0.0])
        return (r @ m @ r) * p0 - 2 * (p0 @ m @ r) * r

    cands = [point(t.real) for t in np.atleast_1d(roots) if abs(t.imag) < 1e-2 * max(1.0, abs(t))]
    # roots at t = infinity show up as a degree drop
    if len(total) < 2 * d1.degree + 1 or abs(total[-1]) < 1e-12:
        cands.append(m[1, 1] * p0 - 2 * pm[1] * np.array([0.0, 1.0, 0.0]))
    return cands


def float_crosscheck(cert: ResidualCertificate, tol: float = 1e-9) -> tuple[int, int]:
    """Residual points located on ``d1`` and the residual curve, and how many also satisfy ``d2``.

    The refinement never looks at ``d2``, so agreement there is an independent
    numeric check of the certificate.
    """
    try:
        pts = residual_points_float(cert.d1, cert.d2, cert, tol)
    except ConvergenceFailure as exc:
        warnings.warn(f"residual markers omitted: {exc}")
        return 0, 0
    return len(pts), int(sum(relative_residual(cert.d2, p) <= tol for p in pts))


def affine(p: np.ndarray) -> tuple[float, float] | None:
    if abs(p[2]) < 1e-12:
        return None
    return float(p[0] / p[2]), float(p[1] / p[2])
