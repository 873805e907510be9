import math

import pytest

from coneval.arrangements import Arrangement, regions
from coneval.cones import Cone
from coneval.fans import validate_fan
from coneval.intrinsic import (
    Estimate,
    convergence_trace,
    exact_intrinsic_2d,
    fan_char_poly,
    fan_intrinsic_volumes,
    mc_intrinsic_volumes,
    verify_klivans_swartz,
    verify_zaslavsky,
)


def test_exact_two_dimensional_values():
    assert exact_intrinsic_2d(Cone.orthant(2)) == pytest.approx((0.25, 0.5, 0.25))
    assert exact_intrinsic_2d(Cone.from_generators([(1, 0), (1, 1)])) == pytest.approx((0.375, 0.5, 0.125))
    with pytest.raises(ValueError):
        exact_intrinsic_2d(Cone.from_halfspaces([], [(0, 1)]))


@pytest.mark.parametrize("gens", [[(1, 0), (1, 1)], [(1, 0), (-1, 3)], [(2, 1), (1, 5)]])
def test_mc_matches_closed_form(gens):
    c = Cone.from_generators(gens)
    est = mc_intrinsic_volumes(c, 50_000, seed=3)
    for k, v in enumerate(exact_intrinsic_2d(c)):
        assert abs(est.values[k] - v) <= est.ci_radius(k, 4.0) + 1e-12


def test_halfspace_values():
    est = mc_intrinsic_volumes(Cone.from_halfspaces([], [(0, 0, 1)]), 100_000, seed=1)
    tol = 4 * math.sqrt(0.25 / 100_000)
    assert est.values[0] == est.values[1] == 0
    assert abs(est.values[2] - 0.5) <= tol and abs(est.values[3] - 0.5) <= tol


def test_subspace_and_zero():
    assert mc_intrinsic_volumes(Cone.full(3), 100).values == [0, 0, 0, 1]
    assert mc_intrinsic_volumes(Cone.zero(3), 100).values == [1, 0, 0, 0]


def test_reproducible_and_sums_to_one():
    c = Cone.orthant(3)
    a = mc_intrinsic_volumes(c, 5000, seed=9)
    b = mc_intrinsic_volumes(c, 5000, seed=9)
    assert a.counts == b.counts
    assert sum(a.total_counts) == 5000
    assert mc_intrinsic_volumes(c, 5000, seed=10).counts != a.counts


def test_orthant_is_binomial():
    est = mc_intrinsic_volumes(Cone.orthant(3), 100_000, seed=2)
    for k, v in enumerate([1 / 8, 3 / 8, 3 / 8, 1 / 8]):
        assert abs(est.values[k] - v) <= est.ci_radius(k)


def test_fan_estimates_and_zaslavsky():
    fan = regions(Arrangement.create([(1, 0), (0, 1), (1, 1)]))
    poly = fan_char_poly(fan, 20_000, seed=4)
    assert poly(1) == pytest.approx(6)
    r = verify_zaslavsky(fan, 20_000, seed=4)
    assert r.passed and r.details["chi_at_1"] == 6


def test_zaslavsky_needs_positive_rank():
    with pytest.raises(ValueError):
        verify_zaslavsky(validate_fan([Cone.full(2)]), 100)


def test_klivans_swartz_two_lines():
    r = verify_klivans_swartz(Arrangement.create([(1, 0), (0, 1)]), 50_000, seed=5)
    assert r.passed
    assert [row["whitney"] for row in r.details["table"]] == [1, 2, 1]


def test_fan_streams_are_independent():
    fan = validate_fan([Cone.from_halfspaces([], [(1, 0)]), Cone.from_halfspaces([], [(-1, 0)])])
    est = fan_intrinsic_volumes(fan, 1000, seed=0)
    assert est.counts[0] != est.counts[1]


def test_estimate_algebra():
    a, b = Estimate(1.0, 0.01), Estimate(0.5, 0.04)
    s = 2 * a - b
    assert s.mean == pytest.approx(1.5) and s.var == pytest.approx(0.08)
    assert a.close(Estimate(1.3, 0.0)) and not a.close(Estimate(1.5, 0.0))


def test_convergence_trace():
    rows = convergence_trace(Cone.orthant(2), 1000, seed=0, points=4)
    assert [n for n, _ in rows] == [250, 500, 750, 1000]
    assert all(sum(v) == pytest.approx(1) for _, v in rows)
