"""Indicator functions of cones and the identities they satisfy.

An :class:`IndicatorElement` is a finite integer combination of indicator
functions of closed cones.  Equality is semantic: both sides are refined by
one arrangement on whose relatively open cells every term is constant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._robust import cone_membership
from .arrangements import Arrangement, enumerate_cells, flats_lattice, regions, restrict_to_flat, whitney_numbers
from .cones import (
    Cone,
    DimensionMismatch,
    face_lattice,
    intersect,
    minkowski_sum,
    normal_cone,
    polar,
    tangent_cone,
)
from .exact_linalg import Subspace, dot, is_zero, normalize_line, sub, to_rational
from .fans import Fan
from .projection import pi_F
from .reports import Report


class IndicatorElement:
    """``x -> sum_C coeff[C] * [x in C]`` with integer coefficients."""

    __slots__ = ("ambient_dim", "terms")

    def __init__(self, ambient_dim: int, terms: Mapping[Cone, int] | Iterable[tuple[int, Cone]] = ()):
        self.ambient_dim = ambient_dim
        acc: Counter = Counter()
        items = terms.items() if isinstance(terms, Mapping) else ((c, k) for k, c in terms)
        for c, k in items:
            if c.ambient_dim != ambient_dim:
                raise DimensionMismatch("term in a different dimension")
            acc[c] += int(k)
        self.terms = {c: k for c, k in acc.items() if k != 0}

    @classmethod
    def of(cls, c: Cone, coeff: int = 1) -> "IndicatorElement":
        return cls(c.ambient_dim, {c: coeff})

    @classmethod
    def zero(cls, d: int) -> "IndicatorElement":
        return cls(d)

    @classmethod
    def one(cls, d: int) -> "IndicatorElement":
        return cls.of(Cone.full(d))

    def _check(self, other: "IndicatorElement") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("elements live in different dimensions")

    def __add__(self, other: "IndicatorElement") -> "IndicatorElement":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        acc = Counter(self.terms)
        acc.update(other.terms)
        return IndicatorElement(self.ambient_dim, acc)

    __radd__ = __add__

    def __neg__(self) -> "IndicatorElement":
        return IndicatorElement(self.ambient_dim, {c: -k for c, k in self.terms.items()})

    def __sub__(self, other: "IndicatorElement") -> "IndicatorElement":
        return self + (-other)

    def __mul__(self, k: int) -> "IndicatorElement":
        return IndicatorElement(self.ambient_dim, {c: k * v for c, v in self.terms.items()})

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"IndicatorElement(d={self.ambient_dim}, {len(self.terms)} terms)"

    def __call__(self, x: Sequence) -> int:
        return evaluate(self, x)

    def to_dict(self) -> dict:
        from .io import cone_to_dict

        return {
            "ambient_dim": self.ambient_dim,
            "terms": [
                {"coefficient": k, "cone": cone_to_dict(c)} for c, k in sorted(self.terms.items(), key=lambda t: t[0].key)
            ],
        }


def evaluate(f: IndicatorElement, x: Sequence) -> int:
    x = tuple(to_rational(a) for a in x)
    if len(x) != f.ambient_dim:
        raise DimensionMismatch("point has wrong dimension")
    return sum(k for c, k in f.terms.items() if c.contains(x))


def evaluate_many(f: IndicatorElement, x: np.ndarray) -> np.ndarray:
    """Exact values at many float64 points."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros(x.shape[0], dtype=np.int64)
    for c, k in f.terms.items():
        out += k * cone_membership(x, list(c.equations.integer_basis), list(c.facets))
    return out


# -- ring structures --------------------------------------------------------


def pointwise_product(f: IndicatorElement, g: IndicatorElement) -> IndicatorElement:
    f._check(g)
    acc: Counter = Counter()
    for c, a in f.terms.items():
        for d, b in g.terms.items():
            acc[intersect(c, d)] += a * b
    return IndicatorElement(f.ambient_dim, acc)


def star_product(f: IndicatorElement, g: IndicatorElement) -> IndicatorElement:
    f._check(g)
    acc: Counter = Counter()
    for c, a in f.terms.items():
        for d, b in g.terms.items():
            acc[minkowski_sum(c, d)] += a * b
    return IndicatorElement(f.ambient_dim, acc)


def polar_map(f: IndicatorElement) -> IndicatorElement:
    return IndicatorElement(f.ambient_dim, {polar(c): k for c, k in f.terms.items()})


def negate_map(f: IndicatorElement) -> IndicatorElement:
    return IndicatorElement(f.ambient_dim, {c.negate(): k for c, k in f.terms.items()})


def relint_indicator(c: Cone) -> IndicatorElement:
    """``[relint C]`` expanded over the closed faces of ``C``."""
    return IndicatorElement(c.ambient_dim, [((-1) ** ((c.dim - f.dim) % 2), f.cone) for f in face_lattice(c)])


def euler_map(f: IndicatorElement) -> IndicatorElement:
    """Linear extension of ``[C] -> (-1)^dim C [relint C]``."""
    acc: Counter = Counter()
    for c, k in f.terms.items():
        for face in face_lattice(c):
            acc[face.cone] += k * (-1) ** (face.dim % 2)
    return IndicatorElement(f.ambient_dim, acc)


# -- canonical forms --------------------------------------------------------


def refinement(elements: Iterable[IndicatorElement], d: int) -> Arrangement:
    """Hyperplanes carving every term into relatively open cells."""
    normals = set()
    for f in elements:
        for c in f.terms:
            for a in c.facets:
                normals.add(normalize_line(a))
            for e in c.equations.integer_basis:
                normals.add(normalize_line(e))
    return Arrangement(d, Subspace.full(d), tuple(sorted(normals)))


@dataclass
class CanonicalForm:
    """Values of an element on the relatively open cells of a refinement.

    ``values`` maps sign vectors over ``arrangement.normals`` to integers;
    cells with value 0 are kept so the cell list is complete.
    """

    arrangement: Arrangement
    values: dict[tuple[int, ...], int]
    witnesses: dict[tuple[int, ...], tuple]

    def nonzero(self) -> dict[tuple[int, ...], int]:
        return {s: v for s, v in self.values.items() if v != 0}

    def full_dimensional(self) -> dict[tuple[int, ...], int]:
        return {s: v for s, v in self.values.items() if 0 not in s}


def _cells(arr: Arrangement, full_dimensional: bool):
    for signs, st in enumerate_cells(arr.ambient_dim, arr.normals, full_dimensional=full_dimensional):
        w = [Fraction(0)] * arr.ambient_dim
        for r in st.rays:
            for i, a in enumerate(r):
                w[i] += a
        yield signs, tuple(w)


def canonicalize(f: IndicatorElement, arrangement: Arrangement | None = None, full_dimensional: bool = False) -> CanonicalForm:
    if arrangement is None:
        arrangement = refinement([f], f.ambient_dim)
    values = {}
    witnesses = {}
    for signs, w in _cells(arrangement, full_dimensional):
        values[signs] = evaluate(f, w)
        witnesses[signs] = w
    return CanonicalForm(arrangement, values, witnesses)


def equal(f: IndicatorElement, g: IndicatorElement) -> bool:
    """Equality as functions on ``R^d``."""
    f._check(g)
    h = f - g
    if not h:
        return True
    return not canonicalize(h).nonzero()


def simple_equal(f: IndicatorElement, g: IndicatorElement) -> bool:
    """Equality almost everywhere, i.e. modulo lower-dimensional cones."""
    f._check(g)
    h = IndicatorElement(f.ambient_dim, {c: k for c, k in (f - g).terms.items() if c.dim == f.ambient_dim})
    if not h:
        return True
    return not canonicalize(h, full_dimensional=True).nonzero()


def difference_witness(f: IndicatorElement, g: IndicatorElement):
    """A point where ``f`` and ``g`` differ, or None."""
    h = f - g
    if not h:
        return None
    cf = canonicalize(h)
    for s, v in cf.values.items():
        if v:
            return cf.witnesses[s]
    return None


class SimpleClass:
    """An element up to lower-dimensional cones."""

    __slots__ = ("element",)

    def __init__(self, element: IndicatorElement):
        d = element.ambient_dim
        self.element = IndicatorElement(d, {c: k for c, k in element.terms.items() if c.dim == d})

    @property
    def ambient_dim(self) -> int:
        return self.element.ambient_dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleClass):
            return NotImplemented
        return simple_equal(self.element, other.element)

    __hash__ = None

    def __add__(self, other: "SimpleClass") -> "SimpleClass":
        return SimpleClass(self.element + other.element)

    def __sub__(self, other: "SimpleClass") -> "SimpleClass":
        return SimpleClass(self.element - other.element)

    def __rmul__(self, k: int) -> "SimpleClass":
        return SimpleClass(k * self.element)

    def __repr__(self) -> str:
        return f"SimpleClass({self.element!r})"


def rho(f: IndicatorElement) -> SimpleClass:
    return SimpleClass(f)


def spherical_volume(s: SimpleClass | IndicatorElement, samples: int = 100_000, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo value of the linear extension of the spherical volume.

    Returns the estimate and its standard error.
    """
    f = s.element if isinstance(s, SimpleClass) else s
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, f.ambient_dim))
    vals = evaluate_many(f, x).astype(np.float64)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0


# -- V_k ----------------------------------------------------------------------


def Vk(c: Cone, k: int) -> IndicatorElement:
    """``sum_{F k-face} [F + N_F C]``."""
    if not 0 <= k <= c.ambient_dim:
        raise ValueError("k out of range")
    return IndicatorElement(c.ambient_dim, [(1, pi_F(c, f)) for f in face_lattice(c).of_dim(k)])


def Vk_fan(fan: Fan, k: int, d: int | None = None) -> IndicatorElement:
    d = fan.ambient_dim if d is None else d
    total = IndicatorElement.zero(d)
    for c in fan.cones:
        total = total + Vk(c, k)
    return total


def Vk_arrangement(a: Arrangement, k: int) -> IndicatorElement:
    return Vk_fan(regions(a), k, a.ambient_dim)


def _split(c: Cone, normal: Sequence) -> tuple[Cone, Cone, Cone]:
    d = c.ambient_dim
    neg = tuple(-to_rational(a) for a in normal)
    return (
        intersect(c, Cone.from_halfspaces([], [normal], ambient_dim=d)),
        intersect(c, Cone.from_halfspaces([], [neg], ambient_dim=d)),
        intersect(c, Cone.from_halfspaces([normal], [], ambient_dim=d)),
    )


def verify_Vk_valuation(c: Cone, normal: Sequence, k: int) -> Report:
    le, ge, eq = _split(c, normal)
    lhs = Vk(c, k)
    rhs = Vk(le, k) + Vk(ge, k) - Vk(eq, k)
    ok = simple_equal(lhs, rhs)
    return Report(
        "vk-val",
        f"k={k}, cone of dim {c.dim} in R^{c.ambient_dim}, H = {[str(a) for a in normal]}^perp",
        ok,
        {"k": k, "lhs_terms": len(lhs), "rhs_terms": len(rhs), "exactly_equal": equal(lhs, rhs)},
    )


def verify_polar_duality(c: Cone, k: int) -> Report:
    d = c.ambient_dim
    lhs = Vk(c, k)
    rhs = Vk(polar(c), d - k)
    ok = equal(lhs, rhs)
    return Report("polar-duality", f"k={k}, cone of dim {c.dim} in R^{d}", ok, {"k": k, "terms": len(lhs)})


def _free_faces(terms: Sequence[Cone], k: int) -> list[Cone]:
    """``k``-faces of an input cone lying in no intersection with another input."""
    free = []
    for i, p in enumerate(terms):
        meets = [intersect(p, q) for j, q in enumerate(terms) if j != i]
        for e in face_lattice(p).of_dim(k):
            if not any(m.contains_cone(e.cone) for m in meets):
                free.append(e.cone)
    return list(dict.fromkeys(free))


def _recover_direct(terms: Sequence[Cone], k: int, d: int) -> Cone:
    rays, lin = [], []
    for e in _free_faces(terms, k):
        rays.extend(e.rays)
        lin.extend(e.lineality.integer_basis)
    return Cone.from_generators(rays, lin, ambient_dim=d)


def recover_cone(terms: Sequence[Cone], k: int, d: int) -> Cone:
    """Reconstruct ``C`` from the cones ``{F + N_F C : F a k-face}``.

    Uses the free ``k``-faces of the inputs when ``2k < d`` and polar
    duality when ``2k > d``.  The result is checked by recomputing
    ``V_k``; input that no cone reproduces raises ``ValueError``.  The
    reconstruction is unique for full-dimensional ``C`` (``2k < d``) and
    for pointed ``C`` (``2k > d``); for other cones distinct inputs can
    share the same ``V_k`` and the check may reject.
    """
    terms = list(dict.fromkeys(terms))
    if any(t.ambient_dim != d for t in terms):
        raise DimensionMismatch("terms live in different dimensions")
    if 2 * k == d:
        raise ValueError("V_k does not determine C when 2k = d (V_k(C) = V_k of the polar)")
    if 2 * k < d:
        c = _recover_direct(terms, k, d)
    else:
        c = polar(_recover_direct(terms, d - k, d))
    target = IndicatorElement(d, [(1, t) for t in terms])
    got = Vk(c, k)
    if got.terms != target.terms and not equal(got, target):
        raise ValueError("no cone reproduces the given V_k terms")
    return c


# -- arrangements -------------------------------------------------------------


def _require_full(a: Arrangement) -> None:
    if a.subspace.dim != a.ambient_dim:
        raise ValueError("the arrangement must live in the whole space")


def lemma_key_rhs(a: Arrangement) -> IndicatorElement:
    lat = flats_lattice(a)
    return IndicatorElement(
        a.ambient_dim, [(abs(lat.mu(lat.bottom, i)), Cone.subspace(f)) for i, f in enumerate(lat.flats)]
    )


def lemma_key_check(a: Arrangement) -> Report:
    lhs = IndicatorElement(a.ambient_dim, [(1, c) for c in regions(a).cones])
    rhs = lemma_key_rhs(a)
    ok = equal(lhs, rhs)
    lat = flats_lattice(a)
    return Report(
        "key",
        f"{len(a)} hyperplanes in R^{a.ambient_dim}",
        ok,
        {"regions": len(lhs), "flats": len(lat), "mobius": [abs(lat.mu(lat.bottom, i)) for i in range(len(lat))]},
    )


def Vk_arr_rhs(a: Arrangement, k: int) -> IndicatorElement:
    _require_full(a)
    d = a.ambient_dim
    lat = flats_lattice(a)
    total = IndicatorElement.zero(d)
    for li in lat.of_dim(k):
        inner = IndicatorElement(
            d, [(abs(lat.mu(li, ki)), Cone.subspace(lat.flats[ki])) for ki in range(len(lat)) if lat.leq(li, ki)]
        )
        outer = IndicatorElement(
            d,
            [
                (abs(lat.mu(lat.bottom, mi)), Cone.subspace(lat.flats[mi].complement()))
                for mi in range(len(lat))
                if lat.leq(mi, li)
            ],
        )
        total = total + star_product(inner, outer)
    return total


def theorem_Vk_arr_check(a: Arrangement, k: int) -> Report:
    lhs = Vk_arrangement(a, k)
    rhs = Vk_arr_rhs(a, k)
    ok = equal(lhs, rhs)
    return Report(
        "vk-arr",
        f"k={k}, {len(a)} hyperplanes in R^{a.ambient_dim}",
        ok,
        {"k": k, "lhs_terms": len(lhs), "rhs_terms": len(rhs)},
    )


def exceptional_arrangement(a: Arrangement) -> list[tuple[int, ...]]:
    """Normals of the hyperplanes ``(H ∩ L) + L^⊥`` over flats ``L``, ``H`` in ``A/L``."""
    _require_full(a)
    out = set()
    for flat in flats_lattice(a).flats:
        for n in restrict_to_flat(a, flat).normals:
            out.add(normalize_line(n))
    return sorted(out)


def in_exceptional(a: Arrangement, x: Sequence) -> bool:
    x = tuple(to_rational(v) for v in x)
    return any(dot(n, x) == 0 for n in exceptional_arrangement(a))


def _dist_sq(s: Subspace, x) -> Fraction:
    r = sub(x, s.project(x))
    return dot(r, r)


def genericity_check(a: Arrangement, x: Sequence) -> Report:
    """Compare membership in the exceptional set with two distance criteria."""
    _require_full(a)
    x = tuple(to_rational(v) for v in x)
    lat = flats_lattice(a)
    dist = [_dist_sq(f, x) for f in lat.flats]
    strict_chain = all(
        dist[j] > dist[i] for i in range(len(lat)) for j in range(len(lat)) if i != j and lat.leq(i, j)
    )
    hyper = True
    for i, flat in enumerate(lat.flats):
        for n in restrict_to_flat(a, flat).normals:
            h = flat.intersect(Subspace.kernel([n], a.ambient_dim))
            if not _dist_sq(h, x) > dist[i]:
                hyper = False
    exceptional = in_exceptional(a, x)
    generic = not exceptional
    return Report(
        "genericity",
        f"{len(a)} hyperplanes in R^{a.ambient_dim}, x = {[str(v) for v in x]}",
        generic == strict_chain == hyper,
        {"generic": generic, "flat_chain_criterion": strict_chain, "hyperplane_criterion": hyper},
    )


def indicator_char_poly(fan: Fan, d: int | None = None) -> list[SimpleClass]:
    d = fan.ambient_dim if d is None else d
    return [SimpleClass(Vk_fan(fan, k, d)) for k in range(d + 1)]


def klivans_swartz_indicator_check(a: Arrangement) -> Report:
    """Each coefficient of the fan's indicator polynomial is ``w_k * rho([R^d])``."""
    d = a.ambient_dim
    coeffs = indicator_char_poly(regions(a), d)
    w = whitney_numbers(a)
    unit = IndicatorElement.one(d)
    rows = []
    ok = True
    for k in range(d + 1):
        good = simple_equal(coeffs[k].element, w[k] * unit)
        ok &= good
        rows.append({"k": k, "whitney": w[k], "ok": good})
    return Report("klivans-swartz-indicator", f"{len(a)} hyperplanes in R^{d}", ok, {"table": rows})


# -- Euler characteristic and its identities --------------------------------


def euler_characteristic(c: Cone) -> int:
    return sum((-1) ** (f.dim % 2) for f in face_lattice(c))


def euler_characteristic_recursive(c: Cone) -> int:
    """Via the lineality reduction: pointed cones have ``1`` iff ``{0}``."""
    lin = c.lineality
    if lin.dim == 0:
        return 1 if c.dim == 0 else 0
    comp = lin.complement()
    reduced = Cone.from_generators([comp.project(r) for r in c.rays], [], ambient_dim=c.ambient_dim)
    return (-1) ** (lin.dim % 2) * euler_characteristic_recursive(reduced)


def hug_kabluchko_check(c: Cone) -> Report:
    d = c.ambient_dim
    lhs = IndicatorElement.zero(d)
    for f in face_lattice(c):
        cone = minkowski_sum(f.cone, normal_cone(c, f).negate())
        lhs = lhs + IndicatorElement.of(cone, (-1) ** (f.dim % 2))
    eps = euler_characteristic(c)
    eps_rec = euler_characteristic_recursive(c)
    rhs = eps * IndicatorElement.one(d)
    ok = equal(lhs, rhs) and eps == eps_rec
    return Report(
        "hug-kabluchko",
        f"cone of dim {c.dim} in R^{d} with {len(face_lattice(c))} faces",
        ok,
        {"euler_characteristic": eps, "euler_characteristic_recursive": eps_rec, "terms": len(lhs)},
    )


def sommerville_check(c: Cone) -> Report:
    d = c.ambient_dim
    lhs = IndicatorElement(d, [((-1) ** (g.dim % 2), tangent_cone(c, g)) for g in face_lattice(c)])
    rhs = (-1) ** (c.dim % 2) * negate_map(relint_indicator(c))
    ok = equal(lhs, rhs)
    return Report("sommerville", f"cone of dim {c.dim} in R^{d}", ok, {"lhs_terms": len(lhs), "rhs_terms": len(rhs)})


def euler_involution_check(f: IndicatorElement) -> Report:
    ok = equal(euler_map(euler_map(f)), f)
    return Report("euler-involution", f"element with {len(f)} terms in R^{f.ambient_dim}", ok, {"terms": len(f)})
