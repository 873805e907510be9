import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coneval.arrangements import (
    Arrangement,
    ArrangementError,
    CharPoly,
    char_poly_delres,
    deletion,
    flats_lattice,
    localization,
    region_sign_vectors,
    regions,
    restriction,
    whitney_numbers,
)
from coneval.exact_linalg import Subspace
from coneval.suite import random_arrangement

from conftest import int_vectors, whitney_subset_poly


@pytest.mark.parametrize(
    "normals, expected",
    [
        ([(1, 0), (0, 1)], "t^2 + 2t + 1"),
        ([(1, 0), (0, 1), (1, 1)], "t^2 + 3t + 2"),
        ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], "t^3 + 4t^2 + 6t + 3"),
        ([(1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1), (0, 1, -1, 0), (0, 1, 0, -1), (0, 0, 1, -1)], "t^4 + 6t^3 + 11t^2 + 6t"),
    ],
)
def test_known_polynomials(normals, expected):
    a = Arrangement.create(normals)
    assert str(whitney_numbers(a)) == expected
    assert char_poly_delres(a) == whitney_numbers(a)
    assert len(regions(a)) == whitney_numbers(a)(1)


def test_parallel_normals_merge():
    a = Arrangement.create([(1, 0), (-2, 0), (0, "1/2")])
    assert a.normals == ((0, 1), (1, 0))


def test_boolean_mobius_by_hand():
    lat = flats_lattice(Arrangement.create([(1, 0), (0, 1)]))
    assert [f.dim for f in lat.flats] == [2, 1, 1, 0]
    assert [lat.mu(0, i) for i in range(4)] == [1, -1, -1, 1]


def test_deletion_restriction_shapes():
    a = Arrangement.create([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    d = deletion(a, (1, 0, 0))
    r = restriction(a, (1, 0, 0))
    assert len(d) == 2
    assert r.dim == 2 and len(r) == 1
    with pytest.raises(ArrangementError):
        deletion(a, (0, 0, 1))
    with pytest.raises(ArrangementError):
        char_poly_delres(Arrangement.create([], ambient_dim=2))


def test_localization():
    a = Arrangement.create([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    axis = Subspace.span([(0, 0, 1)], 3)
    assert localization(a, axis).normals == ((0, 1, 0), (1, 0, 0))


def test_charpoly_formatting():
    assert str(CharPoly.of([0, 2, 0, 1])) == "t^3 + 2t"
    assert str(CharPoly.of([0])) == "0"


arrangements = st.integers(2, 4).flatmap(
    lambda d: st.lists(int_vectors(d), min_size=1, max_size=5).map(lambda ns: Arrangement.create(ns))
)


@given(arrangements)
def test_whitney_matches_subset_oracle(a):
    d = a.ambient_dim
    assert whitney_numbers(a) == CharPoly.of(whitney_subset_poly(list(a.normals), d))
    assert char_poly_delres(a) == whitney_numbers(a)


@given(arrangements)
def test_regions_match_sampled_sign_vectors(a):
    signs = set(region_sign_vectors(a))
    assert len(signs) == sum(whitney_numbers(a).coefficients)
    pts = np.random.default_rng(0).standard_normal((4000, a.ambient_dim))
    sampled = {tuple(int(s) for s in np.sign(p @ np.array(a.normals, float).T)) for p in pts}
    assert sampled <= signs
    for c in regions(a):
        assert c.dim == a.ambient_dim


def test_regions_in_a_subspace():
    u = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    a = Arrangement.create([(1, 0, 0), (0, 1, 0)], subspace=u)
    fan = regions(a)
    assert len(fan) == 4 and all(c.dim == 2 for c in fan)
    assert str(whitney_numbers(a)) == "t^2 + 2t + 1"


def test_twenty_random_arrangements():
    rng = random.Random(0)
    for _ in range(20):
        a = random_arrangement(rng, rng.randint(2, 4), rng.randint(2, 6))
        assert char_poly_delres(a) == whitney_numbers(a)
        assert whitney_numbers(a)(1) == len(regions(a))
