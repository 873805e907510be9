from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coneval.exact_linalg import (
    Subspace,
    dot,
    feasible,
    format_rational,
    normalize_line,
    nullspace,
    primitive,
    project_onto_subspace,
    rank,
    rref,
    solve,
    to_rational,
)

from conftest import int_vectors


def test_to_rational_accepts_exact_inputs():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational(4) == 4
    assert to_rational(Fraction(2, 3)) == Fraction(2, 3)


@pytest.mark.parametrize("bad", [0.5, True, None, [1]])
def test_to_rational_rejects_inexact(bad):
    with pytest.raises(TypeError):
        to_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


def test_primitive_and_normalize():
    assert primitive((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
    assert primitive((0, -6, 9)) == (0, -2, 3)
    assert normalize_line((0, -6, 9)) == (0, 2, -3)


def test_rref_pivots():
    rows, piv = rref([[1, 2, 3], [2, 4, 7]])
    assert piv == [0, 2]
    assert rows == [[1, 2, 0], [0, 0, 1]]


@given(st.lists(int_vectors(4, -5, 5), min_size=1, max_size=5))
def test_rank_matches_numpy(rows):
    assert rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@given(st.lists(int_vectors(4), min_size=1, max_size=3))
def test_nullspace_is_orthogonal_and_complete(rows):
    ns = nullspace(rows, 4)
    assert len(ns) == 4 - rank(rows)
    assert all(dot(r, v) == 0 for r in rows for v in ns)


def test_solve():
    assert solve([[1, 1], [1, -1]], [3, 1]) == (2, 1)
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_subspace_canonical():
    a = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    b = Subspace.span([(1, 2, 1), (1, 0, -1)], 3)
    assert a == b and hash(a) == hash(b)
    assert a.complement() == Subspace.span([(1, -1, 1)], 3)


@given(st.lists(int_vectors(3), min_size=1, max_size=2), int_vectors(3, -9, 9))
def test_projection_properties(gens, x):
    s = Subspace.span(gens, 3)
    p = s.project(x)
    assert s.contains(p)
    assert s.project(p) == p
    r = tuple(a - b for a, b in zip(x, p))
    assert all(dot(r, g) == 0 for g in gens)
    assert project_onto_subspace(x, s) == p


@given(st.lists(int_vectors(3), min_size=1, max_size=2), st.lists(int_vectors(3), min_size=1, max_size=2))
def test_intersection_and_sum_dimensions(g, h):
    a, b = Subspace.span(g, 3), Subspace.span(h, 3)
    assert a.intersect(b).dim + a.sum(b).dim == a.dim + b.dim
    assert a.contains_subspace(a.intersect(b)) and a.sum(b).contains_subspace(b)


def test_feasible_examples():
    ok, w = feasible([], [(1, 0), (0, 1)], [], 2)
    assert ok and w[0] > 0 and w[1] > 0
    assert feasible([], [(1, 0), (-1, 0)], [], 2) == (False, None)
    ok, w = feasible([(1, -1)], [(1, 0)], [], 2)
    assert ok and w[0] == w[1] > 0
    assert feasible([], [(1, 1)], [(-1, 0), (0, -1)], 2)[0] is False


@given(st.lists(int_vectors(3), min_size=1, max_size=4), st.lists(int_vectors(3), max_size=2))
def test_feasible_witness_is_valid(strict, weak):
    ok, w = feasible([], strict, weak, 3)
    if ok:
        assert all(dot(s, w) > 0 for s in strict) and all(dot(v, w) >= 0 for v in weak)
    else:
        # the relaxed closed cone has no generator strictly inside: Gaussian points never satisfy it
        pts = np.random.default_rng(0).standard_normal((2000, 3))
        good = np.all(pts @ np.array(strict, float).T > 0, axis=1)
        if weak:
            good &= np.all(pts @ np.array(weak, float).T >= 0, axis=1)
        assert not good.any()
