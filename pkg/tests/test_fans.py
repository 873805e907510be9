import pytest

from coneval.arrangements import Arrangement, regions
from coneval.cones import Cone
from coneval.fans import (
    FanError,
    check_deletion_restriction,
    check_fan_valuation_identity,
    cone_count,
    evaluate,
    fan_intersect,
    validate_fan,
    whitney_coefficients,
    whitney_decomposition_check,
)
from coneval.suite import singleton, vk_valuation


def quadrants():
    return regions(Arrangement.create([(1, 0), (0, 1)]))


def test_validate_rejects_overlap():
    with pytest.raises(FanError):
        validate_fan([Cone.orthant(2), Cone.from_generators([(1, 1), (-1, 1)])])
    with pytest.raises(FanError):
        validate_fan([Cone.orthant(2), Cone.from_generators([(1, 0)])])


def test_validate_accepts_regions():
    f = validate_fan(quadrants().cones)
    assert len(f) == 4 and f.rank == 2


def test_intersect_with_halfplane():
    f = fan_intersect(quadrants(), (1, -1), "<=")
    assert len(f) == 3


def test_intersect_uses_relative_interiors():
    # no quadrant meets the x-axis in its relative interior
    assert len(fan_intersect(quadrants(), (0, 1), "=")) == 0
    halves = validate_fan([Cone.from_halfspaces([], [(0, 1)]), Cone.from_halfspaces([], [(0, -1)])])
    cut = fan_intersect(halves, (1, 0), "=")
    assert sorted(c.rays for c in cut) == [((0, -1),), ((0, 1),)]


def test_one_dimensional_identity():
    fan = validate_fan([Cone.from_generators([(1,)]), Cone.from_generators([(-1,)])])
    r = check_fan_valuation_identity(cone_count(), fan, (1,))
    assert r.passed and r.details["lhs"] == 2


def test_count_deletion_restriction():
    for normals, expected in [([(1, 0), (0, 1)], (4, 2, 2)), ([(1, 0), (0, 1), (1, 1)], (6, 4, 2))]:
        a = Arrangement.create(normals)
        r = check_deletion_restriction(cone_count(), a, a.normals[0])
        assert r.passed and r.details["lhs"] == expected[0]


def test_singleton_rejected():
    with pytest.raises(FanError):
        check_deletion_restriction(cone_count(), Arrangement.create([(1, 0)]), (1, 0))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_exact_vk_valuation_on_two_lines(k):
    a = Arrangement.create([(1, 0), (0, 1)])
    assert check_fan_valuation_identity(vk_valuation(k, 2), regions(a), (1, 2)).passed
    assert check_deletion_restriction(vk_valuation(k, 2), a, (0, 1)).passed


def test_whitney_coefficients():
    assert whitney_coefficients(2) == [[0, 1, -1], [0, 0, 1]]


def test_whitney_decomposition_with_counts():
    for normals in [[(1, 0), (0, 1)], [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]]:
        a = Arrangement.create(normals)
        d = a.ambient_dim
        b = {k: evaluate(cone_count(), regions(singleton(d, k))) for k in range(1, d + 1)}
        assert b == {k: 2 for k in range(1, d + 1)}
        assert whitney_decomposition_check(b, a, cone_count()).passed


@pytest.mark.parametrize(
    "normals",
    [[(1, 0), (0, 1)], [(1, 0), (0, 1), (1, 1)], [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], [(1, -1, 0), (0, 1, -1), (1, 0, -1)]],
)
def test_deletion_restriction_for_every_hyperplane(normals):
    a = Arrangement.create(normals)
    for h in a.normals:
        assert check_deletion_restriction(cone_count(), a, h).passed
        for k in range(a.ambient_dim + 1):
            assert check_deletion_restriction(vk_valuation(k, a.ambient_dim), a, h).passed


@pytest.mark.parametrize("cut", [(1, 2, 3), (1, -1, 0), (0, 0, 1), (2, 1, -1)])
@pytest.mark.parametrize("side", ["<=", ">=", "="])
def test_intersections_are_fans(cut, side):
    fan = regions(Arrangement.create([(1, 0, 0), (0, 1, 0), (1, 1, 1)]))
    out = fan_intersect(fan, cut, side)
    if len(out):
        checked = validate_fan(out.cones)
        assert len(checked) == len(out)
        assert all(c.lin_hull == out.lin_hull for c in out)
    assert check_fan_valuation_identity(cone_count(), fan, cut).passed
