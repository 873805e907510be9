"""Central hyperplane arrangements living in a subspace ``U`` of Q^d."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from ._dd import DDState
from .cones import Cone, _canonical_directions
from .exact_linalg import Subspace, dot, is_zero, normalize_line, to_rational

IntVec = tuple[int, ...]


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes ``U ∩ a^⊥`` for the normals ``a`` (which lie in ``U``).

    Normals are stored as primitive integer vectors with positive leading
    entry; parallel normals are merged.
    """

    ambient_dim: int
    subspace: Subspace
    normals: tuple[IntVec, ...]

    @classmethod
    def create(cls, normals: Iterable[Sequence], ambient_dim: int | None = None, subspace: Subspace | None = None) -> "Arrangement":
        normals = [tuple(to_rational(a) for a in n) for n in normals]
        if ambient_dim is None:
            if subspace is not None:
                ambient_dim = subspace.ambient_dim
            elif normals:
                ambient_dim = len(normals[0])
            else:
                raise ArrangementError("ambient_dim required for an empty arrangement")
        if subspace is None:
            subspace = Subspace.full(ambient_dim)
        out = set()
        for n in normals:
            if len(n) != ambient_dim:
                raise ArrangementError(f"normal {n} has wrong dimension")
            p = subspace.project(n)
            if is_zero(p):
                raise ArrangementError(f"normal {n} is orthogonal to the subspace")
            out.add(normalize_line(p))
        return cls(ambient_dim, subspace, tuple(sorted(out)))

    def __len__(self) -> int:
        return len(self.normals)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def hyperplane(self, normal: Sequence) -> Subspace:
        return self.subspace.intersect(Subspace.kernel([normal], self.ambient_dim))

    def _key_of(self, h: Sequence) -> IntVec:
        p = self.subspace.project(tuple(to_rational(a) for a in h))
        if is_zero(p):
            raise ArrangementError("not a hyperplane of the arrangement")
        return normalize_line(p)

    @cached_property
    def lineality(self) -> Subspace:
        return Subspace.kernel(list(self.subspace.complement().basis) + list(self.normals), self.ambient_dim)

    @cached_property
    def _flats(self) -> "FlatsLattice":
        return _build_flats(self)


def is_singleton(a: Arrangement) -> int | None:
    """``dim U`` if the arrangement is a single hyperplane, else None."""
    return a.dim if len(a.normals) == 1 else None


def deletion(a: Arrangement, h: Sequence) -> Arrangement:
    key = a._key_of(h)
    if key not in a.normals:
        raise ArrangementError(f"{h} is not a hyperplane of the arrangement")
    return Arrangement(a.ambient_dim, a.subspace, tuple(n for n in a.normals if n != key))


def restriction(a: Arrangement, h: Sequence) -> Arrangement:
    """``A/H``: the other hyperplanes intersected with ``H``, inside ``H``."""
    key = a._key_of(h)
    if key not in a.normals:
        raise ArrangementError(f"{h} is not a hyperplane of the arrangement")
    hsub = a.hyperplane(key)
    return _restrict_to(a, hsub, [n for n in a.normals if n != key])


def _restrict_to(a: Arrangement, sub: Subspace, normals: Iterable[Sequence]) -> Arrangement:
    out = set()
    for n in normals:
        p = sub.project(n)
        if not is_zero(p):
            out.add(normalize_line(p))
    return Arrangement(a.ambient_dim, sub, tuple(sorted(out)))


def restrict_to_flat(a: Arrangement, flat: Subspace) -> Arrangement:
    """The arrangement ``{H ∩ L : L ⊄ H}`` inside the flat ``L``."""
    return _restrict_to(a, flat, a.normals)


def localization(a: Arrangement, flat: Subspace) -> Arrangement:
    """``A_L = {H in A : L ⊆ H}``."""
    if flats_lattice(a).index(flat) is None:
        raise ArrangementError("not a flat of the arrangement")
    keep = tuple(n for n in a.normals if all(dot(n, b) == 0 for b in flat.basis))
    return Arrangement(a.ambient_dim, a.subspace, keep)


# -- lattice of flats -------------------------------------------------------


@dataclass
class FlatsLattice:
    """Flats ordered by reverse inclusion, with the Möbius function.

    ``flats[0]`` is the bottom ``U``; ``hyperplanes[i]`` is the set of normal
    indices whose hyperplane contains flat ``i``.
    """

    flats: list[Subspace]
    hyperplanes: list[frozenset]
    mobius: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.flats)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return max(range(len(self.flats)), key=lambda i: len(self.hyperplanes[i]))

    def index(self, s: Subspace) -> int | None:
        try:
            return self.flats.index(s)
        except ValueError:
            return None

    def leq(self, i: int, j: int) -> bool:
        """``flat_i ⪯ flat_j``, that is ``flat_j ⊆ flat_i``."""
        return self.hyperplanes[i] <= self.hyperplanes[j]

    def mu(self, i: int, j: int) -> int:
        return self.mobius.get((i, j), 0)

    def of_dim(self, k: int) -> list[int]:
        return [i for i, f in enumerate(self.flats) if f.dim == k]


def _build_flats(a: Arrangement) -> FlatsLattice:
    flats = [a.subspace]
    hyps = [frozenset()]
    seen = {a.subspace: 0}
    hyper_spaces = [Subspace.kernel([n], a.ambient_dim) for n in a.normals]
    i = 0
    while i < len(flats):
        x = flats[i]
        for j, n in enumerate(a.normals):
            if j in hyps[i]:
                continue
            y = x.intersect(hyper_spaces[j])
            if y not in seen:
                seen[y] = len(flats)
                flats.append(y)
                hyps.append(frozenset(k for k, m in enumerate(a.normals) if all(dot(m, b) == 0 for b in y.basis)))
        i += 1
    order = sorted(range(len(flats)), key=lambda k: (-flats[k].dim, sorted(hyps[k])))
    flats = [flats[k] for k in order]
    hyps = [hyps[k] for k in order]
    lat = FlatsLattice(flats, hyps)
    n = len(flats)
    for x in range(n):
        lat.mobius[(x, x)] = 1
        # flats are sorted by decreasing dimension, so every z strictly
        # between x and y precedes y
        for y in range(x + 1, n):
            if not lat.leq(x, y) or x == y:
                continue
            lat.mobius[(x, y)] = -sum(
                lat.mobius[(x, z)] for z in range(x, y) if (x, z) in lat.mobius and lat.leq(z, y)
            )
    return lat


def flats_lattice(a: Arrangement) -> FlatsLattice:
    return a._flats


# -- characteristic polynomials ---------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial; ``coefficients[i]`` multiplies ``t**i``."""

    coefficients: tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "CharPoly":
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return cls(tuple(c))

    def __add__(self, other: "CharPoly") -> "CharPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [0] * (n - len(self.coefficients))
        b = list(other.coefficients) + [0] * (n - len(other.coefficients))
        return CharPoly.of(x + y for x, y in zip(a, b))

    def __call__(self, t):
        return sum(c * t**i for i, c in enumerate(self.coefficients))

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def __str__(self) -> str:
        parts = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            if i == 0:
                mono = f"{c}"
            else:
                coef = "" if c == 1 else ("-" if c == -1 else f"{c}")
                mono = f"{coef}t" + (f"^{i}" if i > 1 else "")
            parts.append(mono)
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def whitney_numbers(a: Arrangement) -> CharPoly:
    """Unsigned characteristic polynomial from the Möbius function."""
    lat = flats_lattice(a)
    w = [0] * (a.dim + 1)
    for i, f in enumerate(lat.flats):
        w[f.dim] += abs(lat.mu(lat.bottom, i))
    return CharPoly.of(w)


@lru_cache(maxsize=4096)
def _delres(d: int, basis: tuple, normals: tuple) -> CharPoly:
    a = Arrangement(d, Subspace(d, basis), normals)
    if len(normals) == 1:
        k = a.dim
        return CharPoly.of([0] * (k - 1) + [1, 1])
    h = normals[0]
    dl = deletion(a, h)
    rs = restriction(a, h)
    return _delres(d, dl.subspace.basis, dl.normals) + _delres(d, rs.subspace.basis, rs.normals)


def char_poly_delres(a: Arrangement) -> CharPoly:
    """Unsigned characteristic polynomial by deletion and restriction."""
    if not a.normals:
        raise ArrangementError("deletion-restriction needs a nonempty arrangement")
    return _delres(a.ambient_dim, a.subspace.basis, a.normals)


# -- cells ------------------------------------------------------------------


def enumerate_cells(
    ambient_dim: int,
    normals: Sequence[Sequence[int]],
    subspace: Subspace | None = None,
    full_dimensional: bool = True,
) -> list[tuple[tuple[int, ...], DDState]]:
    """Relatively open cells of the arrangement, by sign vector.

    Each cell is refined hyperplane by hyperplane; a cell's closure is kept
    as a double-description state, and a sign is feasible exactly when some
    generator of the closure takes that sign.  With ``full_dimensional`` only
    the open regions (sign vectors in {-1, +1}) are produced.
    """
    if subspace is None:
        subspace = Subspace.full(ambient_dim)
    start = DDState.from_equations(ambient_dim, subspace.complement().integer_basis)
    cells: list[tuple[tuple[int, ...], DDState]] = [((), start)]
    for a in normals:
        a = tuple(a)
        nxt = []
        for signs, st in cells:
            lin_nonzero = any(dot(a, l) != 0 for l in st.lineality)
            vals = [dot(a, r) for r in st.rays]
            has_pos = lin_nonzero or any(v > 0 for v in vals)
            has_neg = lin_nonzero or any(v < 0 for v in vals)
            if not has_pos and not has_neg:
                if not full_dimensional:
                    nxt.append((signs + (0,), st))
                continue
            if has_pos:
                nxt.append((signs + (1,), st.add(tuple(-x for x in a)) if has_neg else st))
            if has_neg:
                nxt.append((signs + (-1,), st.add(a) if has_pos else st))
            if has_pos and has_neg and not full_dimensional:
                nxt.append((signs + (0,), st.add(a).add(tuple(-x for x in a))))
        cells = nxt
    return cells


def cell_cone(st: DDState) -> Cone:
    lineality = Subspace.span(st.lineality, st.dim)
    return Cone(st.dim, vrep=(lineality, _canonical_directions(st.rays, lineality.complement())))


def regions(a: Arrangement):
    """Closed regions of the arrangement as a :class:`~coneval.fans.Fan`."""
    from .fans import Fan

    cells = enumerate_cells(a.ambient_dim, a.normals, a.subspace, full_dimensional=True)
    return Fan.trusted([cell_cone(st) for _, st in cells], lin_hull=a.subspace, lineality=a.lineality)


def region_sign_vectors(a: Arrangement) -> list[tuple[int, ...]]:
    return [s for s, _ in enumerate_cells(a.ambient_dim, a.normals, a.subspace)]
