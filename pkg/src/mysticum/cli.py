"""Command-line entry point.

Every subcommand prints one JSON report on stdout.  Exit codes: 0 when all
checks pass, 1 when a mathematical check fails (the report carries a
``diff``), 2 for usage and precondition errors.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .decomposition import CertificateError, recording
from .exact_linear import HomoPoly, rank, rat_to_str
from .projective import UNIT_CIRCLE, Conic, GeometryError, HLine, HPoint, tangent_at
from .scene import Scene, SceneFormatError, inscribed_scene, stream

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- reports ---------------------------------------------------------------


def _vec(obj) -> list[str]:
    coeffs = obj.coords if isinstance(obj, HPoint) else obj.coeffs
    return [rat_to_str(c) for c in coeffs]


class Suite:
    """Named checks; exceptions that signal a failed theorem count as failures."""

    FAILURES = (AssertionError, CertificateError)

    def __init__(self):
        self.checks: dict = {}
        self.diff: dict = {}

    def check(self, name: str, fn: Callable[[], object], expected=True):
        try:
            got = fn()
        except self.FAILURES as exc:
            got = f"{type(exc).__name__}: {exc}"
        self.checks[name] = got
        if got != expected:
            self.diff[name] = {"expected": expected, "got": got}
        return got

    def tally(self, name: str, outcomes: Sequence[bool]):
        ok = sum(bool(x) for x in outcomes)
        self.checks[name] = {"passed": ok, "total": len(outcomes)}
        if ok != len(outcomes):
            self.diff[name] = {"expected": len(outcomes), "got": ok}

    def trial(self, fn: Callable[[], bool]) -> bool:
        try:
            return bool(fn())
        except self.FAILURES:
            return False

    @property
    def passed(self) -> bool:
        return not self.diff


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _finish(command: str, scene: Scene | None, suite: Suite, certs: list, extra: dict | None = None,
            out: Path | None = None, detail: dict | None = None) -> tuple[int, dict]:
    bad = [i for i, c in enumerate(certs) if not c.verify()]
    if bad:
        suite.diff["certificates"] = {"expected": "all verify", "got": f"{len(bad)} failed"}
    report = {
        "tool": "mysticum",
        "version": __version__,
        "command": command,
        "scene_hash": scene.digest() if scene is not None else None,
        "status": "pass" if suite.passed else "fail",
        "checks": suite.checks,
        "certificates": {"issued": len(certs), "verified": len(certs) - len(bad)},
    }
    if extra:
        report.update(extra)
    if suite.diff:
        report["diff"] = suite.diff
    if out is not None:
        full = dict(report, **(detail or {}))
        out.write_text(_dump(full))
    return (EXIT_OK if suite.passed else EXIT_FAIL), report


# --- scenes ----------------------------------------------------------------


def load_scene(path: str) -> Scene:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SceneFormatError(f"cannot read {path}: {exc}") from exc
    return Scene.from_json(text)


def _tangent_scene(scene: Scene):
    """Circumscribed polygon touching the conic at the scene points, in label order."""
    from .dual_degenerate import TangentScene
    sides = [tangent_at(scene.conic, p) for p in scene.points.values()]
    return TangentScene(scene.seed, sides, scene.conic)


def cmd_gen(a) -> tuple[int, dict]:
    from .dual_degenerate import degenerate_scene
    from .hexagon import general_hex_scene
    kind = a.kind
    if kind == "hex":
        scene = general_hex_scene(a.seed)
    elif kind == "oct":
        scene = inscribed_scene(8, a.seed)
    elif kind == "tangent-hex":
        scene = inscribed_scene(6, a.seed)
    elif kind == "tangent-oct":
        scene = inscribed_scene(8, a.seed)
    elif kind == "2ngon":
        if a.n < 3:
            raise UsageError("--n must be at least 3")
        scene = inscribed_scene(2 * a.n, a.seed)
    else:  # degenerate
        if not a.statement:
            raise UsageError("--kind degenerate needs --statement")
        scene = degenerate_scene(a.statement, a.seed)
    obj = scene.to_json_obj()
    obj["kind"] = kind
    text = _dump(obj)
    if a.out:
        Path(a.out).write_text(text)
    report = {"tool": "mysticum", "version": __version__, "command": "gen", "kind": kind,
              "scene_hash": scene.digest(), "status": "pass", "out": a.out}
    if not a.out:
        report["scene"] = obj
    return EXIT_OK, report


# --- hexagon ---------------------------------------------------------------

HEX_STATEMENTS = ("thm3_1", "thm3_3", "thm4_1", "thm4_2", "props4x")


def _hex_suite(scene: Scene, statements: Sequence[str], trials: int, cubics: int) -> Suite:
    from . import hexagon as hx
    s = hx.HexScene(scene)
    suite = Suite()
    census_cache: list = []

    def census():
        if not census_cache:
            census_cache.append(hx.census(s, certify=False))
        return census_cache[0]

    if "thm3_1" in statements:
        def pair(k):
            d1 = hx.random_cubic_through(s, f"thm3_1:{k}:1")
            d2 = hx.random_cubic_through(s, f"thm3_1:{k}:2", [d1])
            cert = hx.pascal_certificate(s, d1, d2)
            return cert.verify() and cert.residual.degree == 1 and not cert.residual.is_zero()
        suite.tally("thm3_1.random_pairs", [suite.trial(lambda k=k: pair(k)) for k in range(trials)])
        suite.tally("thm3_1.classical_orderings", [
            suite.trial(lambda o=o: hx.pascal_line_of(s, *o.matchings()) == hx.classical_pascal_line(s, o))
            for o in hx.hex_orderings()])

    if "thm3_3" in statements:
        def triple(k):
            d1 = hx.random_cubic_through(s, f"thm3_3:{k}:1")
            d2 = hx.random_cubic_through(s, f"thm3_3:{k}:2", [d1])
            d3 = hx.random_cubic_through(s, f"thm3_3:{k}:3", [d1, d2])
            hx.gsk_point(s, d1, d2, d3)
            return True
        suite.tally("thm3_3.random_triples", [suite.trial(lambda k=k: triple(k)) for k in range(trials)])
        for name, t in (("steiner", hx.STEINER_EXAMPLE), ("kirkman", hx.KIRKMAN_EXAMPLE)):
            suite.check(f"thm3_3.{name}_example",
                        lambda t=t: isinstance(hx.gsk_point(s, *(s.cubic(m) for m in t)), HPoint))
        suite.check("prop3_2", lambda: hx.prop_3_2_verify(s))
        suite.check("prop3_5", lambda: hx.prop_3_5_verify(s))

    if "thm4_1" in statements:
        def steiner(k):
            d = hx.random_cubic_through(s, f"thm4_1:{k}", [s.cubic(m) for m in
                                                           hx.STEINER_LINE_P + hx.STEINER_LINE_Q])
            cfg = hx.generalized_steiner_configuration(s, d)
            return len(cfg.points) == 4
        suite.tally("thm4_1.random_cubics", [suite.trial(lambda k=k: steiner(k)) for k in range(cubics)])

        def classical():
            line = hx.generalized_steiner_line(s, s.cubic(hx.STEINER_LINE_CUBIC))
            key = " ".join(hx.matching(hx.STEINER_LINE_CUBIC))
            return census().steiner_pluecker_lines[key] == line
        suite.check("thm4_1.matches_census_sp_line", classical)

    if "thm4_2" in statements:
        def salmon_cayley():
            line, pts = hx.salmon_cayley_line(s)
            rep = census()
            kirkman = [p for p in rep.kirkman_points.values() if line.contains(p)]
            steiner = [p for p in rep.steiner_points.values() if line.contains(p)]
            return {"kirkman_on_line": len(kirkman), "steiner_on_line": len(steiner),
                    "construction_points_in_census": set(pts[:3]) <= set(kirkman) and pts[3] in steiner,
                    "is_census_cs_line": any(line == l for l, _, _ in rep.cayley_salmon_lines)}
        suite.check("thm4_2", salmon_cayley, {"kirkman_on_line": 3, "steiner_on_line": 1,
                                              "construction_points_in_census": True,
                                              "is_census_cs_line": True})


    if "props4x" in statements:
        def aux():
            r = hx.auxiliary_conics(s)
            return {"conic_fits": all(r.fits.values()), "cubic_rank_at_most_9": r.sc_cubic_rank <= 9,
                    "line_pair_in_pencil": r.residual_online_CF}
        suite.check("props4x", aux, {"conic_fits": True, "cubic_rank_at_most_9": True,
                                     "line_pair_in_pencil": True})
    return suite


def cmd_hexagon_verify(a) -> tuple[int, dict]:
    scene = load_scene(a.scene)
    statements = HEX_STATEMENTS if a.statement == "all" else (a.statement,)
    with recording() as certs:
        suite = _hex_suite(scene, statements, a.trials, a.cubics)
    return _finish(f"hexagon verify {a.statement}", scene, suite, certs, out=_path(a.json))


def cmd_hexagon_census(a) -> tuple[int, dict]:
    from . import hexagon as hx
    scene = load_scene(a.scene)
    suite = Suite()
    extra: dict = {}
    detail: dict = {}
    with recording() as certs:
        try:
            rep = hx.census(scene)
        except hx.CensusMismatch as exc:
            rep = None
            suite.checks["census"] = str(exc)
            suite.diff.update(exc.diff)
        except Suite.FAILURES as exc:
            rep = None
            suite.checks["census"] = f"{type(exc).__name__}: {exc}"
            suite.diff["census"] = {"expected": "complete census", "got": suite.checks["census"]}
    if rep is not None:
        suite.check("counts", lambda: rep.counts, hx.EXPECTED_COUNTS)
        extra = {"counts": rep.counts, "incidences": rep.cross_checks}
        detail = rep.to_json_obj()
        if a.svg:
            from .render import Overlay, render_scene
            overlays = [Overlay(l, "pascal") for _, l in sorted(rep.pascal_lines.items())]
            Path(a.svg).write_text(render_scene(scene, overlays, title="Pascal lines"))
    return _finish("hexagon census", scene, suite, certs, extra, _path(a.json), detail)


# --- octagon ---------------------------------------------------------------

OCT_STATEMENTS = ("thm5_1", "thm5_3", "thm5_6", "prop5_4")


def _oct_suite(scene: Scene, statements: Sequence[str], trials: int) -> tuple[Suite, dict]:
    from . import octagon as oc
    suite = Suite()
    data: dict = {}
    if "2ngon" in statements:
        s = oc.PolygonScene(scene)
        if len(s.vertices) % 2 or len(s.vertices) < 6:
            raise ValueError("a 2n-gon scene needs an even number (at least 6) of vertices")
        n = len(s.vertices) // 2
        labs = "".join(s.labels)
        rng = stream(scene.seed, "2ngon")

        def matched():
            ms = oc.polygon_matchings(labs, rng)
            return oc.polygon_general(s, *(s.edge_form(m) for m in ms)).ok

        def generic():
            from .projective import curves_through
            basis = curves_through(s.vertices, n)
            fs = []
            while len(fs) < 3:
                coeffs = [rng.nonzero_int(5) for _ in basis]
                f = HomoPoly(n, [sum(c * b.coeffs[i] for c, b in zip(coeffs, basis))
                                 for i in range(len(basis[0].coeffs))])
                if rank([g.coeffs for g in fs] + [f.coeffs]) == len(fs) + 1:
                    fs.append(f)
            return oc.polygon_general(s, *fs).ok

        suite.tally("2ngon.matching_curves", [suite.trial(matched) for _ in range(trials)])
        suite.tally("2ngon.random_curves", [suite.trial(generic) for _ in range(trials)])
        data["n"] = n
        return suite, data

    s = oc.OctScene(scene)
    if "thm5_1" in statements:
        rng = stream(scene.seed, "thm5_1")

        def pair():
            q1 = oc.random_quartic_through(s, rng)
            q2 = oc.random_quartic_through(s, rng)
            cert = oc.mystic_certificate(s, q1, q2)
            return cert.verify() and cert.residual.degree == 2
        suite.tally("thm5_1.random_pairs", [suite.trial(pair) for _ in range(trials)])

        def prop5_2(order):
            c = oc.classical_conic(s, order)
            pts = oc.residual_meets(s, *oc.cycle_matchings(order))
            return len(pts) == 8 and all(c.contains(p) for p in pts)
        suite.tally("prop5_2.sample_orderings",
                    [suite.trial(lambda o=o: prop5_2(o.order)) for o in oc.oct_orderings()[::97]])

    if "thm5_3" in statements:
        rng = stream(scene.seed, "thm5_3")

        def triple():
            qs = [oc.random_quartic_through(s, rng) for _ in range(3)]
            return oc.polygon_general(s, *qs).ok
        suite.tally("thm5_3.random_triples", [suite.trial(triple) for _ in range(trials)])

        def compatible(t):
            cs = [oc.matching_conic(s, a, b) for a, b in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))]
            from .decomposition import in_pencil, pencil_of
            return in_pencil(cs[2].form, pencil_of(cs[0].form, cs[1].form))
        suite.tally("thm5_3.compatible_triples_sample",
                    [suite.trial(lambda t=t: compatible(t)) for t in oc.compatible_triples()[::701]])

    if "thm5_6" in statements:
        outcomes = {}
        for mode in ("product", "random"):
            inst = oc.steiner_conic_instance(scene.seed, mode, scene)
            rep = oc.generalized_steiner_conic_report(inst.scene, inst.q, inst.cs[:3], inst.ds[:3])
            outcomes[mode] = rep.conic is not None
            if rep.conic is not None:
                data[f"thm5_6.{mode}.conic"] = _vec(rep.conic)
        suite.check("thm5_6.cyclic_pairing", lambda: outcomes, {"product": True, "random": True})
        # alternate pairings are reported as data only
        alt = (((0, 0), (1, 1)), ((1, 1), (2, 2)), ((2, 2), (0, 0)))
        inst = oc.steiner_conic_instance(scene.seed, "product", scene)
        try:
            rep = oc.generalized_steiner_conic_report(inst.scene, inst.q, inst.cs[:3], inst.ds[:3], alt)
            data["thm5_6.alternate_pairing_common_member"] = rep.conic is not None
        except (GeometryError, CertificateError) as exc:
            data["thm5_6.alternate_pairing_common_member"] = f"{type(exc).__name__}"

    if "prop5_4" in statements:
        quads = oc.two_quadrilateral_pairs()

        def on_conic(pair):
            c = oc.matching_conic(s, *pair)
            pts = oc.residual_meets(s, *pair)
            return all(c.contains(p) for p in pts) and not c.is_degenerate()
        suite.tally("prop5_4.two_quadrilateral_conics", [suite.trial(lambda p=p: on_conic(p)) for p in quads])
    return suite, data


def cmd_octagon_verify(a) -> tuple[int, dict]:
    scene = load_scene(a.scene)
    statements = OCT_STATEMENTS if a.statement == "all" else (a.statement,)
    with recording() as certs:
        suite, data = _oct_suite(scene, statements, a.trials)
    return _finish(f"octagon verify {a.statement}", scene, suite, certs, {"data": data} if data else None,
                   _path(a.json))


def cmd_octagon_census(a) -> tuple[int, dict]:
    from . import octagon as oc
    scene = load_scene(a.scene)
    s = oc.OctScene(scene)
    suite = Suite()
    extra: dict = {}
    detail: dict = {}
    with recording() as certs:
        holder: dict = {}

        def conics():
            holder["c"] = oc.conic_census(s, workers=a.workers, strict=False)
            return holder["c"].counts()
        expected = dict(oc.EXPECTED_CONIC_COUNTS, classical_quadrilateral_overlap=0, all_nondegenerate=True)
        suite.check("conics", conics, expected)
        cc = holder.get("c")
        if cc is not None:
            extra["conic_counts"] = cc.counts()
            detail["conics"] = cc.to_json_obj()["conics"]
        if cc is not None:
            from .symmetry import conic_stabilizer_census
            stab = conic_stabilizer_census()
            extra["conic_stabilizers"] = stab.to_json_obj()
            suite.check("conic_stabilizers_dihedral_16",
                        lambda: stab.orders == {16: stab.conics} and stab.dihedral == stab.conics)
        if a.pencils and cc is not None:
            from .symmetry import classify_pencils
            pc_holder: dict = {}

            def pencils():
                pc_holder["p"] = oc.pencil_census(s, workers=a.workers, conics=cc)
                return True
            suite.check("pencil_property_all_triples", pencils)
            pc = pc_holder.get("p")
            if pc is not None:
                cls = classify_pencils()
                extra["pencil_counts"] = pc.counts()
                extra["pencil_types"] = cls.to_json_obj()
                suite.check("pencils_distinct_per_triple", lambda: pc.distinct_pencils == pc.triples)
                suite.check("orbit_sizes_sum_to_pencils",
                            lambda: sum(t.count for t in cls.types) == pc.distinct_pencils)
                detail["pencils"] = pc.to_json_obj()["pencils"]
    return _finish("octagon census", scene, suite, certs, extra, _path(a.json), detail)


# --- symmetry --------------------------------------------------------------


def _parse_matchings(text: str, count: int):
    from .hexagon import matching
    from .octagon import LABELS
    parts = [p.strip() for p in text.split("|")]
    if len(parts) != count:
        raise UsageError(f"expected {count} matchings separated by '|'")
    ms = []
    for p in parts:
        m = matching(p)
        if sorted("".join(m)) != list(LABELS):
            raise UsageError(f"{p!r} is not a perfect matching of A..H")
        ms.append(m)
    return ms


def cmd_stabilizer(a) -> tuple[int, dict]:
    from .octagon import LABELS, OctOrdering, canonical_cycle, is_compatible
    from .symmetry import classify_pencils, setwise_stabilizer, stabilizer_of_conic
    suite = Suite()
    ident = a.id.strip()
    if a.which == "conic":
        if "|" in ident:
            ms = _parse_matchings(ident, 2)
            obj = {"matchings": [" ".join(m) for m in sorted(ms)]}
            group = setwise_stabilizer(ms)
        else:
            if sorted(ident) != list(LABELS):
                raise UsageError("a conic id is an ordering of A..H or two matchings")
            obj = {"ordering": canonical_cycle(ident)}
            group = stabilizer_of_conic(OctOrdering(ident))
    else:
        ms = _parse_matchings(ident, 3)
        if not all(is_compatible(x, y) for x, y in ((ms[0], ms[1]), (ms[0], ms[2]), (ms[1], ms[2]))):
            raise UsageError("the three matchings are not pairwise compatible")
        obj = {"triple": [" ".join(m) for m in sorted(ms)]}
        group = setwise_stabilizer(ms)
        obj["type"] = classify_pencils().type_of_triple(ms)
    dihedral = group.dihedral_generators()
    extra = {
        "object": obj,
        "order": group.order,
        "generators": [g.cycles() for g in group.generators],
        "element_orders": {str(k): v for k, v in sorted(group.element_orders().items())},
        "dihedral_generators": [g.cycles() for g in dihedral] if dihedral else None,
    }
    suite.check("closed_under_composition", group.is_closed)
    suite.check("orbit_stabilizer", lambda: 40320 % group.order == 0)
    return _finish(f"stabilizer {a.which}", None, suite, [], extra, _path(a.json))


# --- nets ------------------------------------------------------------------


def cmd_net(a) -> tuple[int, dict]:
    from .nets import (NetViolation, build_line_net, dual_line_net, example_conic_net, net_as_p5,
                       validate_point_net)
    scene = load_scene(a.scene)
    suite = Suite()
    extra: dict = {}
    with recording() as certs:
        if a.kind == "lines34":
            holder: dict = {}

            def build():
                try:
                    holder["net"] = build_line_net(scene)
                except NetViolation as exc:
                    return f"{exc.condition}: {exc.detail}"
                return True
            suite.check("line_net_valid", build)
            net = holder.get("net")
            if net is not None:
                suite.check("dual_point_net_valid", lambda: validate_point_net(dual_line_net(net)))
                extra["net"] = {"classes": [[_vec(l) for l in c] for c in net.classes],
                                "points": [_vec(p) for p in net.points], "degree": len(net.classes[0])}
        else:
            ex = example_conic_net(scene.seed, scene=scene)
            suite.check("steiner_conic_exists", lambda: ex.steiner_conic is not None)
            for cond, ok in ex.report.conditions.items():
                suite.check(f"conditions.{cond}", lambda ok=ok: ok)
            suite.check("pencil_count", lambda: ex.report.pencil_count, 9)
            suite.check("p5_model_valid", lambda: net_as_p5(ex.net).valid)
            extra["net"] = {
                "report": ex.report.to_json_obj(),
                "classes": [[{"name": ex.labels.get(c), "conic": _vec(c)} for c in cls]
                            for cls in ex.net.classes],
                "pencils": [p.to_json_obj() for p in ex.net.pencils],
            }
    return _finish(f"net {a.kind}", scene, suite, certs, extra, _path(a.json))


# --- dual / degenerate -----------------------------------------------------


def cmd_dual(a) -> tuple[int, dict]:
    from .dual_degenerate import DUAL_STATEMENTS, verify_dual
    if a.statement not in DUAL_STATEMENTS:
        raise UsageError(f"unknown dual statement {a.statement!r}")
    scene = load_scene(a.scene)
    ts = _tangent_scene(scene)
    suite = Suite()
    with recording() as certs:
        suite.check(a.statement, lambda: verify_dual(a.statement, ts))
    return _finish(f"dual {a.statement}", scene, suite, certs, out=_path(a.json))


def cmd_degenerate(a) -> tuple[int, dict]:
    from .dual_degenerate import DEGENERATE_STATEMENTS, pentagon_limit, verify_degenerate
    if a.statement not in DEGENERATE_STATEMENTS:
        raise UsageError(f"unknown degenerate statement {a.statement!r}")
    scene = load_scene(a.scene)
    suite = Suite()
    extra: dict = {}
    with recording() as certs:
        suite.check(a.statement, lambda: verify_degenerate(a.statement, scene))
        if a.statement == "prop7_1":
            lim = pentagon_limit(scene.seed, scene=scene)
            suite.check("prop7_1.limit_monotone", lambda: lim.monotone)
            extra["limit"] = {"line": _vec(lim.limit_line),
                              "errors": {str(n): float(e) for n, e in sorted(lim.errors.items())}}
    return _finish(f"degenerate {a.statement}", scene, suite, certs, extra, _path(a.json))


# --- render ----------------------------------------------------------------


def _overlays(scene: Scene, specs: Sequence[str]):
    """Overlay objects plus the certificates worth a numeric cross-check."""
    from .render import Overlay
    out, certs = [], []
    for spec in specs:
        name, _, arg = spec.partition(":")
        if name in ("pascal", "steiner", "kirkman", "steiner-pluecker", "cayley-salmon", "salmon"):
            from .hexagon import census
            rep = census(scene, certify=False)
            table = {
                "pascal": [Overlay(l, "pascal") for _, l in sorted(rep.pascal_lines.items())],
                "steiner": [Overlay(p, "steiner") for _, p in sorted(rep.steiner_points.items())],
                "kirkman": [Overlay(p, "kirkman") for _, p in sorted(rep.kirkman_points.items())],
                "steiner-pluecker": [Overlay(l, "steiner") for _, l in
                                     sorted(rep.steiner_pluecker_lines.items())],
                "cayley-salmon": [Overlay(l, "kirkman") for l, _, _ in rep.cayley_salmon_lines],
                "salmon": [Overlay(p, "mystic") for p in rep.salmon_points],
            }
            out.extend(table[name])
        elif name == "residual":
            # residual:M1|M2 with matchings of the scene labels
            from .decomposition import residual_curve
            from .octagon import PolygonScene
            from .hexagon import matching
            s = PolygonScene(scene)
            if not arg:
                raise UsageError("residual overlay needs matchings, e.g. residual:AB CD EF|BC DE AF")
            m1, m2 = (matching(p) for p in arg.split("|"))
            cert = residual_curve(s.edge_form(m1), s.edge_form(m2), s.conic, s.vertices)
            certs.append(cert)
            res = cert.residual
            obj = HLine(res.coeffs) if res.degree == 1 else Conic(res) if res.degree == 2 else None
            if obj is not None:
                out.append(Overlay(obj, "mystic"))
            for e in m1 + m2:
                out.append(Overlay(s.line(e), "net-class-1"))
        elif name == "mystic":
            from .octagon import classical_conic
            out.append(Overlay(classical_conic(scene, arg or "ABCDEFGH"), "mystic"))
        else:
            raise UsageError(f"unknown overlay {name!r}")
    return out, certs


def cmd_render(a) -> tuple[int, dict]:
    from .render import Overlay, affine, float_crosscheck, render_scene, residual_points_float
    scene = load_scene(a.scene)
    viewport = tuple(a.viewport) if a.viewport else None
    suite = Suite()
    with recording() as certs:
        overlays, crosscheck = _overlays(scene, a.overlay)
        stats = []
        for cert in crosscheck:
            found, ok = float_crosscheck(cert)
            stats.append({"found": found, "on_d2": ok,
                          "expected": cert.d1.degree * cert.d2.degree - len(scene.points)})
            for p in residual_points_float(cert.d1, cert.d2, cert):
                xy = affine(p)
                if xy is not None:
                    overlays.append(Overlay(xy, "kirkman"))
    kw = {"viewport": viewport} if viewport else {}
    svg = render_scene(scene, overlays, title=a.title, **kw)
    Path(a.out).write_text(svg)
    elements = {tag: svg.count(f"<{tag} ") for tag in ("line", "polyline", "circle")}
    extra = {"out": a.out, "elements": elements, "crosscheck": stats}
    return _finish("render", scene, suite, certs, extra, _path(a.json))


# --- parser ----------------------------------------------------------------


def _path(p: str | None) -> Path | None:
    return Path(p) if p else None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mysticum", description="Exact mystic hexagon and octagon configurations.")
    p.add_argument("--version", action="version", version=f"mysticum {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a seeded scene")
    g.add_argument("--kind", required=True,
                   choices=["hex", "oct", "tangent-hex", "tangent-oct", "2ngon", "degenerate"])
    g.add_argument("--n", type=int, default=5, help="half the vertex count for 2ngon")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--statement", help="statement id for --kind degenerate")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gen)

    hx = sub.add_parser("hexagon").add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = hx.add_parser("verify")
    v.add_argument("--scene", required=True)
    v.add_argument("--statement", default="all", choices=("all",) + HEX_STATEMENTS)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--cubics", type=int, default=4)
    v.add_argument("--json")
    v.set_defaults(fn=cmd_hexagon_verify)
    c = hx.add_parser("census")
    c.add_argument("--scene", required=True)
    c.add_argument("--json")
    c.add_argument("--svg")
    c.set_defaults(fn=cmd_hexagon_census)

    oc = sub.add_parser("octagon").add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = oc.add_parser("verify")
    v.add_argument("--scene", required=True)
    v.add_argument("--statement", default="all", choices=("all",) + OCT_STATEMENTS + ("2ngon",))
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--json")
    v.set_defaults(fn=cmd_octagon_verify)
    c = oc.add_parser("census")
    c.add_argument("--scene", required=True)
    c.add_argument("--pencils", action="store_true")
    c.add_argument("--workers", type=int)
    c.add_argument("--json")
    c.set_defaults(fn=cmd_octagon_census)

    st = sub.add_parser("stabilizer")
    st.add_argument("--which", required=True, choices=["conic", "pencil"])
    st.add_argument("--id", required=True)
    st.add_argument("--json")
    st.set_defaults(fn=cmd_stabilizer)

    n = sub.add_parser("net")
    n.add_argument("--kind", required=True, choices=["lines34", "conics33"])
    n.add_argument("--scene", required=True)
    n.add_argument("--json")
    n.set_defaults(fn=cmd_net)

    for name, fn in (("dual", cmd_dual), ("degenerate", cmd_degenerate)):
        d = sub.add_parser(name)
        d.add_argument("--statement", required=True)
        d.add_argument("--scene", required=True)
        d.add_argument("--json")
        d.set_defaults(fn=fn)

    r = sub.add_parser("render")
    r.add_argument("--scene", required=True)
    r.add_argument("--overlay", action="append", default=[])
    r.add_argument("--out", required=True)
    r.add_argument("--viewport", type=float, nargs=4)
    r.add_argument("--title")
    r.add_argument("--json")
    r.set_defaults(fn=cmd_render)
    return p


def execute(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    """Run a command and return ``(exit code, report)`` without printing."""
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        return EXIT_USAGE, _error("usage", exc)
    except SceneFormatError as exc:
        return EXIT_USAGE, _error("scene_format", exc)
    except (GeometryError, CertificateError, ValueError, KeyError, OSError) as exc:
        return EXIT_USAGE, _error("precondition", exc)


def _error(kind: str, exc: BaseException) -> dict:
    return {"tool": "mysticum", "version": __version__, "status": "error", "error": kind,
            "type": type(exc).__name__, "message": str(exc)}


def run(argv: Sequence[str] | None = None) -> int:
    code, report = execute(argv)
    sys.stdout.write(_dump(report))
    return code


def main() -> None:  # pragma: no cover
    with contextlib.suppress(BrokenPipeError):
        sys.exit(run())


def capture(argv: Sequence[str]) -> tuple[int, str]:
    """``run`` with stdout captured, for in-process callers."""
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()
