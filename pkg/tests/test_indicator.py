import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coneval.arrangements import Arrangement, regions, whitney_numbers
from coneval.cones import Cone, face_lattice, intersect, minkowski_sum, polar
from coneval.exact_linalg import rank
from coneval.indicator import (
    IndicatorElement,
    SimpleClass,
    Vk,
    Vk_arr_rhs,
    Vk_arrangement,
    canonicalize,
    difference_witness,
    equal,
    euler_characteristic,
    euler_characteristic_recursive,
    euler_map,
    evaluate,
    exceptional_arrangement,
    genericity_check,
    hug_kabluchko_check,
    indicator_char_poly,
    klivans_swartz_indicator_check,
    lemma_key_check,
    lemma_key_rhs,
    pointwise_product,
    polar_map,
    recover_cone,
    relint_indicator,
    rho,
    simple_equal,
    sommerville_check,
    spherical_volume,
    star_product,
    theorem_Vk_arr_check,
    verify_polar_duality,
    verify_Vk_valuation,
)
from coneval.suite import random_simplicial_cone, singleton

from conftest import int_vectors

E = IndicatorElement.of
O2 = Cone.orthant(2)
LINE = Arrangement.create([(1, 0)])
AXES = Arrangement.create([(1, 0), (0, 1)])


def test_evaluate_examples():
    assert evaluate(E(O2), (1, 1)) == 1
    assert evaluate(E(O2) + E(O2.negate()), (0, 0)) == 2
    one_plus_line = IndicatorElement.one(2) + E(Cone.from_generators([], [(0, 1)]))
    assert evaluate(one_plus_line, (0, 5)) == 2 and evaluate(one_plus_line, (1, 5)) == 1


def test_products():
    zero = Cone.zero(2)
    assert equal(pointwise_product(E(O2), IndicatorElement.one(2)), E(O2))
    assert equal(pointwise_product(E(O2), E(O2.negate())), E(zero))
    assert equal(star_product(E(O2), E(zero)), E(O2))
    assert equal(star_product(E(Cone.from_generators([(1, 0)])), E(Cone.from_generators([(0, 1)]))), E(O2))


def test_valuation_split_is_exact():
    h = (1, -1)
    le = intersect(O2, Cone.from_halfspaces([], [h]))
    ge = intersect(O2, Cone.from_halfspaces([], [(-1, 1)]))
    eq = intersect(O2, Cone.from_halfspaces([h], []))
    assert equal(E(O2), E(le) + E(ge) - E(eq))


def test_simple_versus_exact_equality():
    half = Cone.from_halfspaces([], [(0, -1)])
    boundary = Cone.from_generators([], [(1, 0)])
    f, g = E(half), E(half) + E(boundary)
    assert not equal(f, g) and simple_equal(f, g)
    assert SimpleClass(f) == SimpleClass(g)
    assert difference_witness(f, g)[1] == 0


def test_euler_map():
    z = Cone.zero(2)
    ray = Cone.from_generators([(1, 0)])
    assert equal(euler_map(E(z)), E(z))
    e = euler_map(E(ray))
    assert evaluate(e, (3, 0)) == -1 and evaluate(e, (0, 0)) == 0 and evaluate(e, (-1, 0)) == 0
    assert equal(e, -1 * relint_indicator(ray))


def test_vk_examples():
    assert equal(Vk(O2, 0), E(O2.negate()))
    assert equal(Vk(O2, 2), E(O2))
    q2 = Cone.from_generators([(-1, 0), (0, 1)])
    q4 = Cone.from_generators([(1, 0), (0, -1)])
    assert equal(Vk(O2, 1), E(q2) + E(q4))
    assert not Vk(Cone.from_halfspaces([], [(0, -1)]), 0)


def test_vk_arrangement_of_a_line():
    line = Cone.from_generators([], [(0, 1)])
    assert equal(Vk_arrangement(LINE, 1), IndicatorElement.one(2) + E(line))
    assert equal(Vk_arrangement(LINE, 2), sum((E(c) for c in regions(LINE)), IndicatorElement.zero(2)))
    assert equal(Vk_arrangement(Arrangement.create([], ambient_dim=2), 2), IndicatorElement.one(2))


def test_lemma_key_by_hand():
    rhs = lemma_key_rhs(AXES)
    assert sorted(rhs.terms.values()) == [1, 1, 1, 1]
    for a in [LINE, AXES, Arrangement.create([(1, 0, 0), (0, 1, 0), (0, 0, 1)])]:
        assert lemma_key_check(a).passed


def test_vk_arr_for_a_line_by_hand():
    line = Cone.from_generators([], [(0, 1)])
    rhs = Vk_arr_rhs(LINE, 1)
    assert equal(rhs, IndicatorElement.one(2) + E(line))
    for a in [LINE, AXES]:
        assert all(theorem_Vk_arr_check(a, k).passed for k in range(3))


def test_exceptional_lists():
    assert exceptional_arrangement(LINE) == [(1, 0)]
    assert exceptional_arrangement(AXES) == [(0, 1), (1, 0)]
    assert exceptional_arrangement(Arrangement.create([], ambient_dim=2)) == []


def test_genericity():
    assert genericity_check(LINE, (1, 2)).details["generic"]
    r = genericity_check(LINE, (0, 2))
    assert r.passed and not r.details["generic"]
    z = genericity_check(AXES, (0, 0))
    assert z.passed and not z.details["flat_chain_criterion"]


def test_vk_exceeds_whitney_on_exceptional_set():
    w = whitney_numbers(AXES)
    v = [Vk_arrangement(AXES, k) for k in range(3)]
    for x in [(3, 1), (-2, 5), (1, -7)]:
        assert [evaluate(v[k], x) for k in range(3)] == [w[k] for k in range(3)]
    on_axis = [evaluate(v[k], (0, 4)) for k in range(3)]
    assert all(a >= b for a, b in zip(on_axis, [w[k] for k in range(3)])) and on_axis != [w[k] for k in range(3)]


def test_euler_characteristic():
    assert euler_characteristic(Cone.zero(3)) == 1
    assert euler_characteristic(Cone.from_generators([(1, 0)])) == 0
    for l in range(4):
        assert euler_characteristic(Cone.full(l)) == (-1) ** l
    half = Cone.from_halfspaces([], [(0, 1, 0)])
    assert euler_characteristic(half) == euler_characteristic_recursive(half) == 0


@pytest.mark.parametrize(
    "cone",
    [Cone.from_generators([(-1,)]), Cone.full(2), O2, Cone.zero(2), Cone.from_generators([(1, 0, 0)]), Cone.orthant(3)],
)
def test_face_identities(cone):
    assert hug_kabluchko_check(cone).passed
    assert sommerville_check(cone).passed


def test_hug_kabluchko_halfline_terms_cancel():
    assert hug_kabluchko_check(Cone.from_generators([(-1,)])).details["terms"] == 0


def test_vk_valuation_examples():
    assert verify_Vk_valuation(O2, (1, -1), 1).passed
    assert all(verify_Vk_valuation(Cone.orthant(3), (1, -1, 0), k).passed for k in range(4))


def test_polar_duality_examples():
    for c in [O2, Cone.full(3), Cone.from_generators([(1, 2, 0), (0, 1, 3), (-1, 0, 1)])]:
        assert all(verify_polar_duality(c, k).passed for k in range(c.ambient_dim + 1))


def test_recover_examples():
    o3 = Cone.orthant(3)
    assert recover_cone(list(Vk(o3, 1).terms), 1, 3) == o3
    assert recover_cone([Cone.full(1)], 0, 1) == Cone.zero(1)
    with pytest.raises(ValueError):
        recover_cone(list(Vk(O2, 1).terms), 1, 2)


def test_vk_does_not_determine_lower_dimensional_cones():
    # a ray and a halfplane share V_1, so the halfspace's V_2 is ambiguous
    ray = Cone.from_generators([(0, 0, 1)])
    halfplane = Cone.from_generators([(0, 0, -1)], [(1, 0, 0)])
    assert ray != halfplane and equal(Vk(ray, 1), Vk(halfplane, 1))
    halfspace = polar(ray)
    assert equal(Vk(halfspace, 2), Vk(polar(halfplane), 2))
    with pytest.raises(ValueError):
        recover_cone(list(Vk(halfspace, 2).terms), 2, 3)


def test_recover_rejects_inconsistent_input():
    with pytest.raises(ValueError):
        recover_cone([Cone.orthant(3)], 1, 3)


@pytest.mark.parametrize("d, k", [(3, 1), (4, 1), (4, 3), (3, 2)])
def test_recover_random_simplicial(d, k):
    rng = random.Random(d * 10 + k)
    for _ in range(3):
        c = random_simplicial_cone(rng, d)
        assert recover_cone(list(Vk(c, k).terms), k, d) == c


def test_indicator_char_poly_of_singletons():
    for d, k in [(2, 1), (2, 2), (3, 2)]:
        coeffs = indicator_char_poly(regions(singleton(d, k)), d)
        unit = rho(IndicatorElement.one(d))
        zero = rho(IndicatorElement.zero(d))
        for j, s in enumerate(coeffs):
            assert s == (unit if j in (k, k - 1) else zero)


def test_klivans_swartz_indicator():
    line_coeffs = indicator_char_poly(regions(LINE), 2)
    assert line_coeffs[1] == rho(IndicatorElement.one(2))
    assert indicator_char_poly(regions(AXES), 2)[1] == 2 * rho(IndicatorElement.one(2))
    assert klivans_swartz_indicator_check(Arrangement.create([(1, 0, 0), (0, 1, 0), (1, 1, 1)])).passed


def test_spherical_volume():
    v, se = spherical_volume(rho(IndicatorElement.one(3)), 1000)
    assert v == 1 and se == 0
    v, se = spherical_volume(rho(E(Cone.from_halfspaces([], [(0, 0, 1)]))), 50_000, seed=1)
    assert abs(v - 0.5) <= 4 * se
    v, se = spherical_volume(rho(Vk_arrangement(LINE, 1)), 20_000)
    assert v == 1
    # the volume of V_k(C) is v_k(C)
    v, se = spherical_volume(rho(Vk(Cone.orthant(3), 1)), 50_000, seed=2)
    assert abs(v - 3 / 8) <= 4 * se


def test_face_minus_normal_has_same_volume():
    c = Cone.from_generators([(1, 0, 0), (1, 1, 0), (0, 1, 1)])
    from coneval.cones import normal_cone

    for f in face_lattice(c):
        plus = minkowski_sum(f.cone, normal_cone(c, f))
        minus = minkowski_sum(f.cone, normal_cone(c, f).negate())
        a, sa = spherical_volume(E(plus), 30_000, seed=3)
        b, sb = spherical_volume(E(minus), 30_000, seed=4)
        assert abs(a - b) <= 4 * (sa * sa + sb * sb) ** 0.5 + 1e-12


# -- properties -----------------------------------------------------------


cones2 = st.lists(int_vectors(2), min_size=1, max_size=3).map(lambda g: Cone.from_generators(g))
cones3 = st.lists(int_vectors(3), min_size=1, max_size=3).map(lambda g: Cone.from_generators(g))
elements2 = st.lists(st.tuples(st.sampled_from([-2, -1, 1, 2]), cones2), min_size=1, max_size=3).map(
    lambda ts: IndicatorElement(2, ts)
)
points2 = st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=30, max_size=30)


@given(elements2, elements2, points2)
def test_equal_is_sound(f, g, pts):
    if equal(f, g):
        assert all(evaluate(f, x) == evaluate(g, x) for x in pts)
    else:
        x = difference_witness(f, g)
        assert evaluate(f, x) != evaluate(g, x)


@given(elements2, points2)
def test_canonical_form_values(f, pts):
    cf = canonicalize(f)
    for s, w in cf.witnesses.items():
        assert cf.values[s] == evaluate(f, w)
    assert equal(f, f + IndicatorElement.zero(2))


@given(elements2, elements2, elements2)
def test_products_are_commutative_associative(f, g, h):
    one, unit = IndicatorElement.one(2), E(Cone.zero(2))
    for prod, u in [(pointwise_product, one), (star_product, unit)]:
        assert equal(prod(f, g), prod(g, f))
        assert equal(prod(prod(f, g), h), prod(f, prod(g, h)))
        assert equal(prod(f, u), f)


@given(elements2)
def test_polar_and_euler_are_involutions(f):
    assert equal(polar_map(polar_map(f)), f)
    assert equal(euler_map(euler_map(f)), f)


@given(cones3)
def test_polar_intertwines_products_on_nested_pairs(c):
    faces = [f.cone for f in face_lattice(c)]
    for d in faces:
        # a face and its cone have convex union
        lhs = polar_map(pointwise_product(E(c), E(d)))
        rhs = star_product(polar_map(E(c)), polar_map(E(d)))
        assert equal(lhs, rhs)


@given(cones3, st.lists(int_vectors(3, -9, 9), min_size=10, max_size=10))
def test_vk_partition_at_generic_points(c, pts):
    vs = [Vk(c, k) for k in range(4)]
    total = sum(vs[1:], vs[0])
    for x in pts:
        x = tuple(Fraction(a) + Fraction(1, 97 + i) for i, a in enumerate(x))
        vals = [evaluate(v, x) for v in vs]
        assert sum(vals) == 1
        k = vals.index(1)
        assert c.lineality_dim <= k <= c.dim
    assert simple_equal(total, IndicatorElement.one(3))


@given(cones3)
def test_euler_characteristic_two_ways(c):
    assert euler_characteristic(c) == euler_characteristic_recursive(c)
    assert euler_characteristic(c) == ((-1) ** c.dim if c.is_subspace else 0)
