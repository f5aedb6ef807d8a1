"""Label permutations acting on matchings, orderings, conics and pencils.

Everything is brute force over the 40320 elements of S8, via a precomputed
table giving the image of each of the 105 matchings under each permutation.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .hexagon import all_matchings, matching
from .octagon import LABELS, OctOrdering, compatible_triples, cycle_matchings


class ClassificationAnomaly(AssertionError):
    """More stabilizer types than the two pencil types."""


@dataclass(frozen=True)
class Perm:
    """Permutation of ``range(n)``; ``image[i]`` is where ``i`` goes."""

    image: tuple

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"{self.image} is not a bijection")

    @classmethod
    def identity(cls, n: int = 8) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, text: str, labels: str = LABELS) -> "Perm":
        """Parse cycle notation such as ``"(ABCDEFGH)"`` or ``"(AH)(BG)"``."""
        img = list(range(len(labels)))
        for cyc in text.replace(" ", "").strip("()").split(")("):
            if not cyc:
                continue
            idx = [labels.index(c) for c in cyc]
            for a, b in zip(idx, idx[1:] + idx[:1]):
                img[a] = b
        return cls(tuple(img))

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: "Perm") -> "Perm":
        """``(self * other)(i) = self(other(i))``."""
        return Perm(tuple(self.image[j] for j in other.image))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Perm(tuple(inv))

    def order(self) -> int:
        n, p = 1, self
        ident = Perm.identity(len(self.image))
        while p != ident:
            p = p * self
            n += 1
        return n

    def relabel(self, label: str, labels: str = LABELS) -> str:
        return labels[self.image[labels.index(label)]]

    def mapping(self, labels: str = LABELS) -> dict[str, str]:
        return {a: labels[j] for a, j in zip(labels, self.image)}

    def cycles(self, labels: str = LABELS) -> str:
        seen, out = set(), []
        for i in range(len(self.image)):
            if i in seen or self.image[i] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(labels[j])
                j = self.image[j]
            out.append("(" + "".join(cyc) + ")")
        return "".join(out) or "()"


class PermGroup:
    """Finite permutation group with all elements materialized."""

    def __init__(self, generators: Iterable[Perm], elements: Iterable[Perm] | None = None):
        self.generators = list(generators)
        if elements is None:
            elements = closure(self.generators)
        self.elements = frozenset(elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def element_orders(self) -> Counter:
        return Counter(g.order() for g in self.elements)

    def is_closed(self) -> bool:
        return all(a * b in self.elements for a in self.elements for b in self.elements)

    def dihedral_generators(self) -> tuple[Perm, Perm] | None:
        """An ``n``-cycle and a reflection generating the group, if it is dihedral of order ``2n``."""
        n = self.order // 2
        if self.order % 2:
            return None
        rots = sorted((g for g in self.elements if g.order() == n), key=lambda g: g.image)
        invs = sorted((g for g in self.elements if g.order() == 2), key=lambda g: g.image)
        for r in rots:
            for s in invs:
                if s * r * s == r.inverse() and s not in closure([r]) and \
                        len(closure([r, s])) == self.order:
                    return r, s
        return None


def closure(generators: Sequence[Perm]) -> set[Perm]:
    if not generators:
        return set()
    ident = Perm.identity(len(generators[0].image))
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for h in generators:
            x = h * g
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return seen


# --- action tables ---------------------------------------------------------


@lru_cache(maxsize=None)
def _tables():
    perms = np.array(list(itertools.permutations(range(8))), dtype=np.int8)
    ms = all_matchings(LABELS)
    partners = np.zeros((len(ms), 8), dtype=np.int8)
    for k, m in enumerate(ms):
        for e in m:
            a, b = LABELS.index(e[0]), LABELS.index(e[1])
            partners[k, a], partners[k, b] = b, a
    weights = 8 ** np.arange(8, dtype=np.int64)
    codes = partners.astype(np.int64) @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    rows = np.arange(len(perms))[:, None]
    action = np.empty((len(perms), len(ms)), dtype=np.int16)
    for k in range(len(ms)):
        img = np.empty_like(perms)
        # partner'[p[i]] = p[partner[i]]
        img[rows, perms] = perms[:, partners[k]]
        pos = np.searchsorted(sorted_codes, img.astype(np.int64) @ weights)
        action[:, k] = order[pos]
    return perms, ms, {m: i for i, m in enumerate(ms)}, action


def symmetric_group_size() -> int:
    return len(_tables()[0])


def _matching_set_ids(obj) -> tuple[int, ...]:
    _, _, index, _ = _tables()
    return tuple(sorted(index[m] for m in obj))


def _as_matching_set(obj) -> tuple:
    """Normalize a supported object to a sorted tuple of matchings."""
    if isinstance(obj, OctOrdering):
        return tuple(obj.matchings())
    if isinstance(obj, str):
        return tuple(cycle_matchings(OctOrdering(obj).order))
    if obj and isinstance(obj[0], str) and len(obj[0]) == 2:
        return (obj,)
    return tuple(sorted(obj))


def setwise_stabilizer(matchings: Sequence) -> PermGroup:
    """Permutations mapping the given set of matchings onto itself."""
    perms, _, _, action = _tables()
    ids = np.array(_matching_set_ids(matchings))
    images = np.sort(action[:, ids], axis=1)
    keep = np.all(images == np.sort(ids), axis=1)
    elements = [Perm(tuple(int(v) for v in perms[i])) for i in np.nonzero(keep)[0]]
    return PermGroup(_small_generating_set(elements), elements)


def _small_generating_set(elements: Sequence[Perm]) -> list[Perm]:
    target = len(elements)
    gens: list[Perm] = []
    span = {Perm.identity(8)}
    for g in sorted(elements, key=lambda p: (-p.order(), p.image)):
        if g not in span:
            gens.append(g)
            span = closure(gens)
            if len(span) == target:
                break
    return gens


def stabilizer_of_conic(o) -> PermGroup:
    """Stabilizer of the unordered matching pair behind a mystic conic."""
    return setwise_stabilizer(_as_matching_set(o))


def apply(g: Perm, obj):
    """Image of a matching, ordering or set of matchings under ``g``."""
    if isinstance(obj, OctOrdering):
        return OctOrdering("".join(g.relabel(c) for c in obj.order))
    if isinstance(obj, str):
        return OctOrdering("".join(g.relabel(c) for c in obj)).order
    if obj and isinstance(obj[0], str) and len(obj[0]) == 2:
        return matching(" ".join(g.relabel(e[0]) + g.relabel(e[1]) for e in obj))
    if isinstance(obj, frozenset):
        return frozenset(apply(g, m) for m in obj)
    return tuple(sorted(apply(g, m) for m in obj))


def symmetric_group_generators() -> list[Perm]:
    return [Perm.from_cycles("(ABCDEFGH)"), Perm.from_cycles("(AB)")]


def orbit(obj, group: PermGroup | None = None) -> set:
    """Orbit under ``group`` (the full symmetric group when omitted)."""
    gens = group.generators if group is not None else symmetric_group_generators()
    seen = {obj}
    queue = deque([obj])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = apply(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# --- pencil classification -------------------------------------------------

PROP_8_2_TRIPLE = ("AB CD EF GH", "BC DE FG AH", "AD CH EG BF")
PROP_8_3_TRIPLE = ("AB CD EF GH", "BC DE FG AH", "AF CE DG BH")


@dataclass
class PencilType:
    name: str
    count: int
    stabilizer_order: int
    has_order_three: bool
    element_orders: dict
    representative: tuple
    per_conic: dict  # pencils of this type through a conic -> number of conics


@dataclass
class PencilClassification:
    total: int
    types: list[PencilType]
    type_of: dict  # triple ids -> type name

    def to_json_obj(self) -> dict:
        return {
            "total": self.total,
            "types": [{
                "name": t.name,
                "count": t.count,
                "stabilizer_order": t.stabilizer_order,
                "has_order_three_element": t.has_order_three,
                "element_orders": {str(k): v for k, v in sorted(t.element_orders.items())},
                "representative": [" ".join(m) for m in t.representative],
                "per_conic": {str(k): v for k, v in sorted(t.per_conic.items())},
            } for t in self.types],
        }

    def type_of_triple(self, triple) -> str:
        return self.type_of[_matching_set_ids(_as_matching_set([matching(m) if isinstance(m, str)
                                                                else m for m in triple]))]


def classify_pencils() -> PencilClassification:
    """Orbits of S8 on compatible matching triples, i.e. on the mystic pencils.

    Type 1 is the orbit whose stabilizer contains elements of order three.
    """
    perms, ms, index, action = _tables()
    triples = compatible_triples()
    ids = [tuple(sorted(index[m] for m in t)) for t in triples]
    unassigned = set(ids)
    orbits = []
    while unassigned:
        rep = min(unassigned)
        imgs = np.sort(action[:, list(rep)], axis=1)
        members = {tuple(int(v) for v in row) for row in np.unique(imgs, axis=0)}
        unassigned -= members
        orbits.append((rep, members))
    n = len(perms)
    info = []
    for rep, members in orbits:
        stab = setwise_stabilizer([ms[i] for i in rep])
        if stab.order * len(members) != n:
            raise AssertionError("orbit-stabilizer violated")
        info.append((rep, members, stab))
    orders = sorted({s.order for _, _, s in info})
    if len(info) > 2 or len(orders) != len(info):
        raise ClassificationAnomaly(f"unexpected stabilizer orders {orders}")
    info.sort(key=lambda t: (3 not in t[2].element_orders(), -t[2].order))
    types, type_of = [], {}
    for k, (rep, members, stab) in enumerate(info):
        name = f"type-{k + 1}"
        per_conic: Counter = Counter()
        for t in members:
            for pair in itertools.combinations(t, 2):
                per_conic[pair] += 1
        eo = stab.element_orders()
        types.append(PencilType(name, len(members), stab.order, 3 in eo, dict(eo),
                                tuple(ms[i] for i in rep),
                                dict(Counter(per_conic.values()))))
        for t in members:
            type_of[t] = name
    return PencilClassification(len(ids), types, type_of)


# --- stabilizers of all classical conics ----------------------------------


@dataclass
class ConicStabilizerCensus:
    conics: int
    orders: dict  # stabilizer order -> number of conics
    dihedral: int  # conics whose stabilizer is generated by their own rotation and reflection

    def to_json_obj(self) -> dict:
        return {"conics": self.conics,
                "orders": {str(k): v for k, v in sorted(self.orders.items())},
                "dihedral": self.dihedral}


def ordering_symmetries(order: str) -> tuple[Perm, Perm]:
    """Rotation and reflection of a cyclic labeling, as label permutations."""
    n = len(order)
    rot = {order[i]: order[(i + 1) % n] for i in range(n)}
    ref = {order[i]: order[-i % n] for i in range(n)}
    return (Perm(tuple(LABELS.index(rot[c]) for c in LABELS)),
            Perm(tuple(LABELS.index(ref[c]) for c in LABELS)))


def conic_stabilizer_census() -> ConicStabilizerCensus:
    """Stabilizer orders of all 2520 classical conics and a dihedral check for each.

    A stabilizer of order ``2n`` containing an ``n``-cycle ``r`` and an
    involution ``s`` outside ``<r>`` with ``s r s = r^-1`` is dihedral.
    """
    from .octagon import oct_orderings
    perms, _, index, action = _tables()
    lookup = {tuple(int(v) for v in p): i for i, p in enumerate(perms)}
    orders: Counter = Counter()
    dihedral = 0
    orderings = oct_orderings()
    for o in orderings:
        a, b = (index[m] for m in o.matchings())
        pa, pb = action[:, a], action[:, b]
        keep = ((pa == a) & (pb == b)) | ((pa == b) & (pb == a))
        size = int(keep.sum())
        orders[size] += 1
        r, s = ordering_symmetries(o.order)
        if (keep[lookup[r.image]] and keep[lookup[s.image]] and r.order() * 2 == size
                and s * r * s == r.inverse() and s not in closure([r])):
            dihedral += 1
    return ConicStabilizerCensus(len(orderings), dict(orders), dihedral)
