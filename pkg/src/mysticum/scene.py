"""Seeded rational instances and their JSON form.

Scene JSON::

    {"seed": 7, "conic": ["1", "0", "0", "1", "0", "-1"],
     "points": {"A": ["3", "4", "5"], ...}}

Every rational is a ``"p/q"`` string; points are listed alphabetically.
"""

from __future__ import annotations

import hashlib
import json
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exact_linear import HomoPoly, rat, rat_from_str, rat_to_str
from .projective import UNIT_CIRCLE, Conic, HPoint, param_point

MASK64 = (1 << 64) - 1
# Knuth's MMIX constants
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407


class SceneFormatError(ValueError):
    """Malformed or inconsistent scene JSON."""


class Lcg64:
    """64-bit linear congruential generator, ``s <- a s + c mod 2^64``.

    Outputs are the high 32 bits of the state, which is portable across
    languages with wrapping 64-bit arithmetic.
    """

    def __init__(self, seed: int):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & MASK64
        self.next_u32()

    def next_u32(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & MASK64
        return self.state >> 32

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        # rejection keeps the draw unbiased
        limit = (1 << 32) - (1 << 32) % n
        while True:
            v = self.next_u32()
            if v < limit:
                return v % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)

    def rational(self, num: int = 30, den: int = 7) -> Fraction:
        return Fraction(self.randint(-num, num), self.randint(1, den))

    def nonzero_int(self, bound: int) -> int:
        while True:
            v = self.randint(-bound, bound)
            if v:
                return v

    def choice(self, seq):
        return seq[self.randbelow(len(seq))]

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def fork(self, salt: str) -> "Lcg64":
        """Independent stream keyed by ``salt`` (stable across runs)."""
        h = int.from_bytes(hashlib.sha256(f"{self.state}:{salt}".encode()).digest()[:8], "big")
        return Lcg64(h)


def stream(seed: int, salt: str) -> Lcg64:
    return Lcg64(seed).fork(salt)


def labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_uppercase[:n])
    return [f"P{i:02d}" for i in range(n)]


@dataclass
class Scene:
    """A labeled rational instance: base conic, named points, seed."""

    seed: int
    conic: Conic = UNIT_CIRCLE
    points: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)  # curve parameters, not serialized

    def __post_init__(self):
        self.points = {k: self.points[k] for k in sorted(self.points)}

    @property
    def labels(self) -> list[str]:
        return list(self.points)

    def __getitem__(self, label: str) -> HPoint:
        return self.points[label]

    def relabel(self, mapping: Mapping[str, str]) -> "Scene":
        """Scene whose point ``mapping[k]`` is the old point ``k``."""
        return Scene(self.seed, self.conic, {mapping.get(k, k): p for k, p in self.points.items()})

    def to_json_obj(self) -> dict:
        return {
            "seed": self.seed,
            "conic": [rat_to_str(c) for c in self.conic.coeffs],
            "points": {k: [rat_to_str(c) for c in p.coords] for k, p in self.points.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json_obj(), sort_keys=True).encode()).hexdigest()[:16]

    @classmethod
    def from_json_obj(cls, obj) -> "Scene":
        try:
            seed = obj["seed"]
            if not isinstance(seed, int) or isinstance(seed, bool):
                raise SceneFormatError("seed must be an integer")
            conic_vals = [rat_from_str(v) for v in obj["conic"]]
            if len(conic_vals) != 6:
                raise SceneFormatError("conic needs 6 coefficients")
            pts = {}
            for k, v in obj["points"].items():
                coords = [rat_from_str(c) for c in v]
                if len(coords) != 3:
                    raise SceneFormatError(f"point {k} needs 3 coordinates")
                pts[k] = HPoint(coords)
            conic = Conic(HomoPoly(2, conic_vals))
        except SceneFormatError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
            raise SceneFormatError(f"malformed scene: {exc}") from exc
        for k, p in pts.items():
            if not conic.contains(p):
                raise SceneFormatError(f"point {k} is not on the scene conic")
        return cls(seed, conic, pts)

    @classmethod
    def from_json(cls, text: str) -> "Scene":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SceneFormatError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise SceneFormatError("scene must be a JSON object")
        return cls.from_json_obj(obj)


def distinct_params(rng: Lcg64, n: int, num: int = 30, den: int = 7) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < n:
        t = rng.rational(num, den)
        if t not in out:
            out.append(t)
    return out


def inscribed_scene(n: int, seed: int, params: Iterable | None = None) -> Scene:
    """``n`` labeled points at distinct rational parameters on the unit circle."""
    if params is None:
        params = distinct_params(stream(seed, f"inscribed:{n}"), n)
    params = [rat(t) for t in params]
    pts = {lab: param_point(t) for lab, t in zip(labels(n), params)}
    if len(set(pts.values())) != n:
        raise ValueError("parameters must be distinct")
    return Scene(seed, UNIT_CIRCLE, pts, params={"t": params})


def hex_scene(seed: int) -> Scene:
    return inscribed_scene(6, seed)


def oct_scene(seed: int) -> Scene:
    return inscribed_scene(8, seed)
