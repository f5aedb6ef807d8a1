import pytest

from mysticum.decomposition import in_pencil, pencil_of
from mysticum.exact_linear import rank
from mysticum.nets import (ConicNet, LineNet, NetViolation, build_line_net, cross_pencils,
                           dual_line_net, example_conic_net, net_as_p5, validate_conic_net,
                           validate_line_net, validate_point_net)
from mysticum.octagon import random_conic_through
from mysticum.projective import param_point
from mysticum.scene import stream


@pytest.fixture(scope="module")
def conic_example():
    return example_conic_net(3)


def test_line_net_from_steiner_line(hexs):
    net = build_line_net(hexs)
    assert [len(c) for c in net.classes] == [4, 4, 4]
    assert len(net.points) == 16
    assert validate_point_net(dual_line_net(net))


def test_line_net_missing_line_is_rejected(hexs):
    net = build_line_net(hexs)
    broken = LineNet([net.classes[0], net.classes[1], net.classes[2][:3]])
    with pytest.raises(NetViolation):
        validate_line_net(broken)


def test_two_net_of_disjoint_conics_is_valid():
    rng = stream(1, "two-net")
    a = [param_point(t) for t in (0, 1, 2, 3)]
    b = [param_point(t) for t in (-1, -2, -3, 5)]
    first = [random_conic_through(a, rng) for _ in range(2)]
    second = [random_conic_through(b, rng) for _ in range(2)]
    net = ConicNet([first, second], cross_pencils([first, second]))
    assert validate_conic_net(net).valid


def test_example_conic_net_is_a_3_3_net(conic_example):
    rep = conic_example.report
    assert rep.valid and rep.degree == 3 and rep.pencil_count == 9
    assert conic_example.steiner_conic is not None
    assert sorted(conic_example.labels.values()) == ["C4", "D4", "S", "X1", "X2", "X3", "Y1", "Y2", "Y3"]


def test_duplicated_conic_breaks_disjointness(conic_example):
    classes = [list(c) for c in conic_example.net.classes]
    classes[1][0] = classes[0][0]
    rep = validate_conic_net(ConicNet(classes, conic_example.net.pencils))
    assert not rep.conditions["disjoint"] and not rep.valid


def test_p5_model_agrees_with_validity(conic_example):
    assert net_as_p5(conic_example.net).valid
    broken = ConicNet(conic_example.net.classes, conic_example.net.pencils[:-1])
    assert not validate_conic_net(broken).valid
    assert not net_as_p5(broken).valid


def test_pencil_membership_is_a_rank_condition(conic_example):
    x1, y1 = conic_example.net.classes[0][0], conic_example.net.classes[1][0]
    p = pencil_of(x1.form, y1.form)
    for c in (c for cls in conic_example.net.classes for c in cls):
        assert in_pencil(c.form, p) == (rank([x1.coeffs, y1.coeffs, c.coeffs]) == 2)
