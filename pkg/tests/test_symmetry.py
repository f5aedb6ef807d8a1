import itertools

import pytest

from mysticum import symmetry as sy
from mysticum.hexagon import matching
from mysticum.octagon import LABELS, OctOrdering, canonical_cycle, cycle_matchings, quadrilateral_matchings


def brute_stabilizer_order(matchings):
    """Count label permutations fixing a set of matchings (no numpy tables)."""
    target = {frozenset(frozenset(e) for e in m) for m in matchings}
    n = 0
    for p in itertools.permutations(LABELS):
        mp = dict(zip(LABELS, p))
        img = {frozenset(frozenset(mp[c] for c in e) for e in m) for m in target}
        n += img == target
    return n


@pytest.fixture(scope="module")
def classification():
    return sy.classify_pencils()


def test_perm_basics():
    r = sy.Perm.from_cycles("(ABCDEFGH)")
    assert r.order() == 8 and r.cycles() == "(ABCDEFGH)"
    s = sy.Perm.from_cycles("(BH)(CG)(DF)")
    assert (s * r * s) == r.inverse()
    assert sy.Perm.identity().cycles() == "()"


def test_identity_conic_stabilizer_is_dihedral_of_order_16():
    g = sy.stabilizer_of_conic("ABCDEFGH")
    assert g.order == 16 == brute_stabilizer_order(cycle_matchings("ABCDEFGH"))
    r, s = g.dihedral_generators()
    assert r.order() == 8 and s.order() == 2 and g.is_closed()
    assert [x.cycles() for x in g.generators] == ["(ABCDEFGH)", "(BH)(CG)(DF)"]


def test_every_conic_stabilizer_has_order_16():
    c = sy.conic_stabilizer_census()
    assert c.orders == {16: 2520} and c.dihedral == 2520


def test_two_quadrilateral_stabilizer():
    pair = quadrilateral_matchings("ABCD", "EFGH")
    g = sy.setwise_stabilizer(pair)
    assert g.order == brute_stabilizer_order(pair) == 64
    assert g.dihedral_generators() is None


def test_named_pencil_triples_by_brute_force():
    t82 = [matching(m) for m in sy.PROP_8_2_TRIPLE]
    t83 = [matching(m) for m in sy.PROP_8_3_TRIPLE]
    assert sy.setwise_stabilizer(t82).order == brute_stabilizer_order(t82) == 6
    assert sy.setwise_stabilizer(t83).order == brute_stabilizer_order(t83) == 4


def test_pencil_classification(classification):
    types = {t.name: t for t in classification.types}
    assert classification.total == 16800
    assert (types["type-1"].count, types["type-1"].stabilizer_order) == (6720, 6)
    assert (types["type-2"].count, types["type-2"].stabilizer_order) == (10080, 4)
    assert types["type-1"].has_order_three and not types["type-2"].has_order_three
    assert types["type-1"].per_conic == {8: 2520} and types["type-2"].per_conic == {12: 2520}
    assert classification.type_of_triple(sy.PROP_8_2_TRIPLE) == "type-1"
    assert classification.type_of_triple(sy.PROP_8_3_TRIPLE) == "type-2"


def test_orbit_stabilizer_holds_for_each_type(classification):
    for t in classification.types:
        assert t.count * t.stabilizer_order == 40320


def test_orbits_under_full_group():
    assert len(sy.orbit(matching("AB CD EF GH"))) == 105
    assert len(sy.orbit("ABCDEFGH")) == 2520
    assert {canonical_cycle(o) for o in sy.orbit("ABCDEFGH")} == {o.order for o in
                                                                  map(OctOrdering, sy.orbit("ABCDEFGH"))}


def test_object_is_fixed_by_its_stabilizer():
    o = "ACEGBDFH"
    g = sy.stabilizer_of_conic(o)
    assert sy.orbit(tuple(sorted(cycle_matchings(o))), g) == {tuple(sorted(cycle_matchings(o)))}
