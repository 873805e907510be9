"""The acceptance battery: one report per criterion, with timings."""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from typing import Callable

import numpy as np

from .arrangements import Arrangement, char_poly_delres, regions, whitney_numbers
from .cones import Cone, polar
from .exact_linalg import Subspace, rank
from .fans import (
    ConeValuation,
    Fan,
    check_deletion_restriction,
    check_fan_valuation_identity,
    cone_count,
    evaluate,
    validate_fan,
    whitney_decomposition_check,
)
from .indicator import (
    IndicatorElement,
    Vk,
    Vk_arrangement,
    equal,
    euler_map,
    evaluate as ind_evaluate,
    exceptional_arrangement,
    genericity_check,
    hug_kabluchko_check,
    in_exceptional,
    klivans_swartz_indicator_check,
    lemma_key_check,
    recover_cone,
    simple_equal,
    sommerville_check,
    theorem_Vk_arr_check,
    verify_polar_duality,
    verify_Vk_valuation,
)
from .intrinsic import mc_intrinsic_volumes, mc_valuation, verify_klivans_swartz, verify_zaslavsky
from .projection import check_moreau_isomorphism, moreau_fan
from .reports import Report

# -- instance generators ----------------------------------------------------


def random_arrangement(rng: random.Random, d: int, n: int) -> Arrangement:
    """``n`` pairwise non-parallel hyperplanes with small rational normals."""
    while True:
        normals = [
            tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(d)) for _ in range(n)
        ]
        if any(all(a == 0 for a in v) for v in normals):
            continue
        a = Arrangement.create(normals, ambient_dim=d)
        if len(a) == n:
            return a


def random_arrangements(count: int = 20, seed: int = 0) -> list[Arrangement]:
    rng = random.Random(seed)
    return [random_arrangement(rng, rng.randint(2, 4), rng.randint(2, 6)) for _ in range(count)]


def random_simplicial_cone(rng: random.Random, d: int) -> Cone:
    while True:
        gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(d)]
        if rank(gens) == d:
            return Cone.from_generators(gens, ambient_dim=d)


def coordinate_arrangement(d: int) -> Arrangement:
    return Arrangement.create([tuple(int(i == j) for j in range(d)) for i in range(d)])


def test_arrangements() -> list[Arrangement]:
    """Small arrangements shared by the exact and statistical criteria."""
    return [
        Arrangement.create([(1, 0)]),
        coordinate_arrangement(2),
        Arrangement.create([(1, 0), (0, 1), (1, 1)]),
        coordinate_arrangement(3),
        Arrangement.create([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
        Arrangement.create([(1, -1, 0), (0, 1, -1), (1, 0, -1)]),
    ]


def test_cones() -> list[Cone]:
    rng = random.Random(11)
    return [
        Cone.orthant(2),
        Cone.orthant(3),
        Cone.from_generators([(1, 0), (1, 1)]),
        Cone.from_halfspaces([], [(0, 0, 1)]),
        Cone.from_generators([(1, 0, 0)]),
        Cone.from_generators([(1, 0, 0), (0, 1, 0)], [(0, 0, 1)]),
        random_simplicial_cone(rng, 3),
        Cone.zero(2),
        Cone.full(2),
    ]


def singleton(d: int, k: int) -> Arrangement:
    """One hyperplane inside the coordinate subspace spanned by ``e_1..e_k``."""
    basis = [tuple(int(i == j) for j in range(d)) for i in range(k)]
    return Arrangement.create([basis[0]], ambient_dim=d, subspace=Subspace.span(basis, d))


# -- criteria -----------------------------------------------------------------


def _timed(name: str, limit: float | None, body: Callable[[], tuple[bool, dict]]) -> Report:
    t0 = time.perf_counter()
    ok, details = body()
    elapsed = time.perf_counter() - t0
    details["seconds"] = round(elapsed, 3)
    if limit is not None:
        details["time_limit"] = limit
        ok = ok and elapsed < limit
    return Report(name, details.pop("instance", ""), ok, details)


def criterion_char_poly(seed: int = 0) -> Report:
    def body():
        arrs = random_arrangements(20, seed)
        bad = [i for i, a in enumerate(arrs) if char_poly_delres(a) != whitney_numbers(a)]
        return not bad, {"instance": "20 random arrangements, d <= 4", "mismatches": bad}

    return _timed("1 char-poly agreement", 10.0, body)


def criterion_zaslavsky_exact(seed: int = 0) -> Report:
    def body():
        arrs = random_arrangements(20, seed)
        bad = [i for i, a in enumerate(arrs) if whitney_numbers(a)(1) != len(regions(a))]
        return not bad, {"instance": "chi(1) = #regions on 20 arrangements", "mismatches": bad}

    return _timed("2 zaslavsky at 1", None, body)


def criterion_halfspace(samples: int = 100_000, seed: int = 0) -> Report:
    def body():
        d = 3
        est = mc_intrinsic_volumes(Cone.from_halfspaces([], [(0, 0, 1)]), samples, seed)
        tol = 4 * math.sqrt(0.25 / samples)
        v = est.values
        ok = abs(v[d] - 0.5) <= tol and abs(v[d - 1] - 0.5) <= tol
        return ok, {"instance": f"halfspace in R^{d}, N = {samples}", "values": v, "tolerance": tol}

    return _timed("3 halfspace volumes", 5.0, body)


def ks_arrangements() -> list[Arrangement]:
    return [
        coordinate_arrangement(3),
        coordinate_arrangement(2),
        Arrangement.create([(1, 0), (0, 1), (1, 1)]),
        Arrangement.create([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
        Arrangement.create([(1, -1, 0), (0, 1, -1), (1, 0, -1)]),
    ]


def criterion_klivans_swartz(samples: int = 200_000, seed: int = 0) -> Report:
    def body():
        reports = [verify_klivans_swartz(a, samples, seed + i) for i, a in enumerate(ks_arrangements())]
        return all(reports), {
            "instance": f"5 arrangements, N = {samples} per cone",
            "results": [r.to_dict() for r in reports],
        }

    return _timed("4 klivans-swartz", 120.0, body)


def zaslavsky_fans() -> list[Fan]:
    fans = [regions(a) for a in test_arrangements()]
    fans.append(validate_fan([Cone.from_halfspaces([], [(1, 0)]), Cone.from_halfspaces([], [(-1, 0)])]))
    fans.append(moreau_fan(Cone.orthant(2)))
    fans.append(moreau_fan(Cone.from_generators([(1, 0, 0), (1, 1, 0), (0, 1, 1)])))
    return [f for f in fans if f.rank >= 1]


def criterion_zaslavsky_minus_one(samples: int = 50_000, seed: int = 0) -> Report:
    def body():
        reports = [verify_zaslavsky(f, samples, seed + i) for i, f in enumerate(zaslavsky_fans())]
        return all(reports), {"instance": f"{len(reports)} fans of rank >= 1", "results": [r.to_dict() for r in reports]}

    return _timed("5 zaslavsky at -1", None, body)


def criterion_exact_suite() -> Report:
    def body():
        arrs = test_arrangements()
        cones = test_cones()
        results: dict[str, list[bool]] = {}
        results["key"] = [lemma_key_check(a).passed for a in arrs]
        results["vk-arr"] = [theorem_Vk_arr_check(a, k).passed for a in arrs for k in range(a.ambient_dim + 1)]
        splits = [
            (Cone.orthant(2), (1, -1)),
            (Cone.orthant(3), (1, -1, 0)),
            (Cone.from_generators([(1, 0), (1, 1)]), (1, -2)),
            (Cone.from_halfspaces([], [(0, 0, 1)]), (1, 1, 0)),
            (Cone.from_generators([(1, 0, 0), (1, 1, 0), (0, 1, 1)]), (0, 1, -1)),
        ]
        results["vk-val"] = [verify_Vk_valuation(c, h, k).passed for c, h in splits for k in range(c.ambient_dim + 1)]
        results["polar-duality"] = [verify_polar_duality(c, k).passed for c in cones for k in range(c.ambient_dim + 1)]
        results["klivans-swartz-indicator"] = [klivans_swartz_indicator_check(a).passed for a in arrs]
        results["hug-kabluchko"] = [hug_kabluchko_check(c).passed for c in cones]
        results["sommerville"] = [sommerville_check(c).passed for c in cones]
        rng = random.Random(5)
        elements = []
        for _ in range(5):
            d = rng.randint(2, 3)
            terms = [(rng.choice([-2, -1, 1, 2]), random_simplicial_cone(rng, d)) for _ in range(2)]
            elements.append(IndicatorElement(d, terms))
        results["euler-involution"] = [equal(euler_map(euler_map(f)), f) for f in elements]
        ok = all(all(v) and len(v) >= 5 for v in results.values())
        return ok, {
            "instance": "exact identities via canonical forms",
            "counts": {k: [sum(v), len(v)] for k, v in results.items()},
        }

    return _timed("6 exact theorem suite", 120.0, body)


def criterion_moreau() -> Report:
    def body():
        rng = random.Random(3)
        cases = [
            ("R^2_{>=0}", Cone.orthant(2), 9),
            ("R^3_{>=0}", Cone.orthant(3), 27),
            ("random simplicial in R^3", random_simplicial_cone(rng, 3), 27),
            ("halfplane", Cone.from_halfspaces([], [(0, 1)]), 3),
            ("subspace", Cone.subspace(Subspace.span([(1, 1, 0)], 3)), 1),
        ]
        rows = []
        ok = True
        for name, c, expected in cases:
            r = check_moreau_isomorphism(c)
            good = r.passed and r.details["intervals"] == expected == r.details["moreau_faces"]
            ok &= good
            rows.append({"cone": name, "intervals": r.details["intervals"], "moreau_faces": r.details["moreau_faces"], "ok": good})
        return ok, {"instance": "5 cones", "table": rows}

    return _timed("7 moreau anti-prism", None, body)


def criterion_recovery(seed: int = 0) -> Report:
    def body():
        rng = random.Random(seed + 17)
        rows = []
        ok = True
        for d, k in [(3, 1), (4, 1), (4, 3)]:
            good = 0
            for _ in range(5):
                c = random_simplicial_cone(rng, d)
                try:
                    good += recover_cone(list(Vk(c, k).terms), k, d) == c
                except ValueError:
                    pass
            ok &= good == 5
            rows.append({"d": d, "k": k, "recovered": good, "of": 5})
        for d, k, trials in [(2, 1, 5), (4, 2, 5)]:
            good = 0
            for _ in range(trials):
                c = random_simplicial_cone(rng, d)
                good += equal(Vk(c, k), Vk(polar(c), k))
            ok &= good == trials
            rows.append({"d": d, "k": k, "self_polar_equal": good, "of": trials})
        return ok, {"instance": "random simplicial cones", "table": rows}

    return _timed("8 recovery", None, body)


def _random_point(rng: random.Random, d: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(d))


def criterion_exceptional(seed: int = 0) -> Report:
    def body():
        rng = random.Random(seed + 23)
        line = Arrangement.create([(1, 0)])
        axes = coordinate_arrangement(2)
        lists_ok = exceptional_arrangement(line) == [(1, 0)] and exceptional_arrangement(axes) == [(0, 1), (1, 0)]
        rows = []
        ok = lists_ok
        for a in [line, axes, Arrangement.create([(1, 0), (0, 1), (1, 1)]), coordinate_arrangement(3)]:
            d = a.ambient_dim
            w = whitney_numbers(a)
            vk = [Vk_arrangement(a, k) for k in range(d + 1)]
            generic_ok = 0
            tested = 0
            while tested < 100:
                x = _random_point(rng, d)
                if in_exceptional(a, x):
                    continue
                tested += 1
                generic_ok += all(ind_evaluate(vk[k], x) == w[k] for k in range(d + 1)) and genericity_check(a, x).passed
            special_ok = 0
            pi = exceptional_arrangement(a)
            for n in pi:
                # a point of n^perp off the other exceptional hyperplanes
                basis = Subspace.kernel([n], d).integer_basis
                while True:
                    coeffs = [rng.randint(-9, 9) for _ in basis]
                    x = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(d))
                    if any(x) and all(m == n or sum(p * q for p, q in zip(m, x)) != 0 for m in pi):
                        break
                vals = [ind_evaluate(vk[k], x) for k in range(d + 1)]
                special_ok += (
                    all(v >= w[k] for k, v in enumerate(vals))
                    and any(v > w[k] for k, v in enumerate(vals))
                    and genericity_check(a, x).passed
                )
            good = generic_ok == 100 and special_ok == len(pi)
            ok &= good
            rows.append({"hyperplanes": len(a), "d": d, "generic_ok": generic_ok, "exceptional_ok": special_ok, "exceptional": len(pi)})
        return ok, {"instance": "exceptional sets", "hand_lists_match": lists_ok, "table": rows}

    return _timed("9 exceptional set", None, body)


def vk_valuation(k: int, d: int) -> ConeValuation:
    return ConeValuation(lambda c: Vk(c, k), IndicatorElement.zero(d), simple_equal, name=f"V_{k}")


def criterion_fan_valuations(samples: int = 20_000, seed: int = 0) -> Report:
    def body():
        counts = {"fan-valuation": [0, 0], "deletion-restriction": [0, 0], "whitney-decomposition": [0, 0]}

        def tally(key, passed):
            counts[key][0] += bool(passed)
            counts[key][1] += 1

        arrs = [a for a in test_arrangements() if len(a) >= 2]
        for a in arrs:
            d = a.ambient_dim
            fan = regions(a)
            cut = tuple(1 + i for i in range(d))
            for k in range(d + 1):
                tally("fan-valuation", check_fan_valuation_identity(vk_valuation(k, d), fan, cut).passed)
                tally("deletion-restriction", check_deletion_restriction(vk_valuation(k, d), a, a.normals[0]).passed)
            tally("deletion-restriction", check_deletion_restriction(cone_count(), a, a.normals[-1]).passed)
        for i, a in enumerate(arrs):
            d = a.ambient_dim
            for j in range(d + 1):
                phi = mc_valuation(j, samples, seed=seed + 100 * i + j)
                b = {k: evaluate(phi, regions(singleton(d, k))) for k in range(1, d + 1)}
                tally("whitney-decomposition", whitney_decomposition_check(b, a, phi).passed)
        ok = all(p == n for p, n in counts.values())
        return ok, {"instance": f"{len(arrs)} arrangements", "counts": counts, "samples": samples}

    return _timed("10 fan-valuation identities", None, body)


CRITERIA: list[Callable[[], Report]] = [
    criterion_char_poly,
    criterion_zaslavsky_exact,
    criterion_halfspace,
    criterion_klivans_swartz,
    criterion_zaslavsky_minus_one,
    criterion_exact_suite,
    criterion_moreau,
    criterion_recovery,
    criterion_exceptional,
    criterion_fan_valuations,
]


def run_suite(log: Callable[[str], None] | None = None) -> list[Report]:
    out = []
    for crit in CRITERIA:
        r = crit()
        if log is not None:
            log(f"{r.status}  {r.theorem} ({r.details['seconds']} s)")
        out.append(r)
    return out
