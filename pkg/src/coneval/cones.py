"""Polyhedral cones with exact double representation.

A :class:`Cone` is ``{x : E x = 0, A x <= 0}`` and simultaneously
``lineality + cone(rays)``.  Both representations are kept in a canonical
form:

* the lineality space and the equation space are RREF subspaces,
* rays are projected onto the orthogonal complement of the lineality space,
* facet normals are projected into the linear hull,
* every ray or normal is a primitive integer vector, sorted.

Consequently two cones are equal exactly when their canonical keys agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ._dd import hrep_to_vrep
from .exact_linalg import (
    Subspace,
    Vec,
    dot,
    is_zero,
    primitive,
    project_onto_subspace,
    rank,
    to_rational,
)

IntVec = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class NotAFace(ValueError):
    pass


def _canonical_directions(vectors: Iterable[Sequence], onto: Subspace) -> tuple[IntVec, ...]:
    out = set()
    for v in vectors:
        p = project_onto_subspace(v, onto) if onto.dim < onto.ambient_dim else v
        if not is_zero(p):
            out.add(primitive(p))
    return tuple(sorted(out))


def _check_dims(d: int, vectors: Iterable[Sequence]) -> list[tuple[Fraction, ...]]:
    out = []
    for v in vectors:
        v = tuple(to_rational(a) for a in v)
        if len(v) != d:
            raise DimensionMismatch(f"vector {v} does not live in dimension {d}")
        out.append(v)
    return out


class Cone:
    """A polyhedral cone in Q^d.

    Use :meth:`from_generators` or :meth:`from_halfspaces`; the other
    representation is computed lazily and cached.
    """

    def __init__(self, ambient_dim: int, *, vrep=None, hrep=None, raw_generators=None, raw_halfspaces=None):
        self.ambient_dim = ambient_dim
        self._vrep = vrep
        self._hrep = hrep
        self._raw_generators = raw_generators
        self._raw_halfspaces = raw_halfspaces

    # -- construction -----------------------------------------------------

    @classmethod
    def from_generators(cls, rays: Iterable[Sequence] = (), lineality: Iterable[Sequence] = (), ambient_dim: int | None = None) -> "Cone":
        rays = list(rays)
        lineality = list(lineality)
        if ambient_dim is None:
            first = (rays + lineality)[:1]
            if not first:
                raise ValueError("ambient_dim required for a cone without generators")
            ambient_dim = len(first[0])
        rays = _check_dims(ambient_dim, rays)
        lineality = _check_dims(ambient_dim, lineality)
        raw = (
            [primitive(r) for r in rays if not is_zero(r)],
            [primitive(l) for l in lineality if not is_zero(l)],
        )
        return cls(ambient_dim, raw_generators=raw)

    @classmethod
    def from_halfspaces(cls, equations: Iterable[Sequence] = (), inequalities: Iterable[Sequence] = (), ambient_dim: int | None = None) -> "Cone":
        """The cone ``{x : e . x = 0, a . x <= 0}``."""
        equations = list(equations)
        inequalities = list(inequalities)
        if ambient_dim is None:
            first = (equations + inequalities)[:1]
            if not first:
                raise ValueError("ambient_dim required for a cone without constraints")
            ambient_dim = len(first[0])
        equations = _check_dims(ambient_dim, equations)
        inequalities = _check_dims(ambient_dim, inequalities)
        raw = (
            [primitive(e) for e in equations if not is_zero(e)],
            [primitive(a) for a in inequalities if not is_zero(a)],
        )
        return cls(ambient_dim, raw_halfspaces=raw)

    @classmethod
    def full(cls, d: int) -> "Cone":
        return cls(d, vrep=(Subspace.full(d), ()), hrep=(Subspace.zero(d), ()))

    @classmethod
    def zero(cls, d: int) -> "Cone":
        return cls(d, vrep=(Subspace.zero(d), ()), hrep=(Subspace.full(d), ()))

    @classmethod
    def subspace(cls, s: Subspace) -> "Cone":
        return cls(s.ambient_dim, vrep=(s, ()), hrep=(s.complement(), ()))

    @classmethod
    def orthant(cls, d: int, sign: int = 1) -> "Cone":
        return cls.from_generators(
            [tuple(sign * int(i == j) for j in range(d)) for i in range(d)], ambient_dim=d
        )

    # -- representation plumbing -----------------------------------------

    def _vrep_from_hrep(self, equations: Subspace, facets) -> tuple[Subspace, tuple[IntVec, ...]]:
        lin, rays = hrep_to_vrep(self.ambient_dim, equations.integer_basis, facets)
        lineality = Subspace.span(lin, self.ambient_dim)
        return lineality, _canonical_directions(rays, lineality.complement())

    def _hrep_from_vrep(self, lineality: Subspace, rays) -> tuple[Subspace, tuple[IntVec, ...]]:
        lin, normals = hrep_to_vrep(self.ambient_dim, lineality.integer_basis, rays)
        equations = Subspace.span(lin, self.ambient_dim)
        return equations, _canonical_directions(normals, equations.complement())

    def _realize_v(self):
        if self._vrep is None:
            if self._hrep is None:
                if self._raw_halfspaces is not None:
                    eqs, ineqs = self._raw_halfspaces
                    lin, rays = hrep_to_vrep(self.ambient_dim, eqs, ineqs)
                    lineality = Subspace.span(lin, self.ambient_dim)
                    self._vrep = (lineality, _canonical_directions(rays, lineality.complement()))
                    return self._vrep
                self._realize_h()
            self._vrep = self._vrep_from_hrep(*self._hrep)
        return self._vrep

    def _realize_h(self):
        if self._hrep is None:
            if self._vrep is None:
                if self._raw_generators is not None:
                    rays, lin = self._raw_generators
                    self._hrep = self._hrep_from_vrep(Subspace.span(lin, self.ambient_dim), rays)
                    return self._hrep
                self._realize_v()
            self._hrep = self._hrep_from_vrep(*self._vrep)
        return self._hrep

    @property
    def lineality(self) -> Subspace:
        return self._realize_v()[0]

    @property
    def rays(self) -> tuple[IntVec, ...]:
        """Extreme rays modulo the lineality space."""
        return self._realize_v()[1]

    @property
    def equations(self) -> Subspace:
        """The orthogonal complement of the linear hull."""
        return self._realize_h()[0]

    @property
    def facets(self) -> tuple[IntVec, ...]:
        """Outer facet normals ``a`` (``a . x <= 0`` on the cone)."""
        return self._realize_h()[1]

    @cached_property
    def lin_hull(self) -> Subspace:
        return self.equations.complement()

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.equations.dim

    @property
    def lineality_dim(self) -> int:
        return self.lineality.dim

    @property
    def is_subspace(self) -> bool:
        return not self.rays

    @property
    def is_pointed(self) -> bool:
        return self.lineality.dim == 0

    @cached_property
    def key(self) -> tuple:
        lineality, rays = self._realize_v()
        return (self.ambient_dim, lineality.basis, rays)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return (
            f"Cone(d={self.ambient_dim}, dim={self.dim}, rays={list(self.rays)}, "
            f"lineality={[list(b) for b in self.lineality.integer_basis]})"
        )

    # -- membership -------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionMismatch("point has wrong dimension")
        if any(dot(e, x) != 0 for e in self.equations.basis):
            return False
        return all(dot(a, x) <= 0 for a in self.facets)

    def relint_contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionMismatch("point has wrong dimension")
        if any(dot(e, x) != 0 for e in self.equations.basis):
            return False
        return all(dot(a, x) < 0 for a in self.facets)

    def relint_point(self) -> Vec:
        out = [Fraction(0)] * self.ambient_dim
        for r in self.rays:
            for i, a in enumerate(r):
                out[i] += a
        return tuple(out)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays) and all(
            self.lineality.contains(l) or (self.contains(l) and self.contains(tuple(-a for a in l)))
            for l in other.lineality.basis
        )

    # -- derived cones ----------------------------------------------------

    def negate(self) -> "Cone":
        lin, rays = self._realize_v()
        eqs, facets = self._realize_h()
        return Cone(
            self.ambient_dim,
            vrep=(lin, tuple(sorted(tuple(-a for a in r) for r in rays))),
            hrep=(eqs, tuple(sorted(tuple(-a for a in f) for f in facets))),
        )

    @cached_property
    def _face_lattice(self) -> "FaceLattice":
        return _build_face_lattice(self)


def polar(c: Cone) -> Cone:
    """``{y : y . x <= 0 for all x in c}``; swaps the two representations."""
    lin, rays = c._realize_v()
    eqs, facets = c._realize_h()
    return Cone(c.ambient_dim, vrep=(eqs, facets), hrep=(lin, rays))


def from_generators(rays=(), lineality=(), ambient_dim=None) -> Cone:
    return Cone.from_generators(rays, lineality, ambient_dim)


def from_halfspaces(equations=(), inequalities=(), ambient_dim=None) -> Cone:
    return Cone.from_halfspaces(equations, inequalities, ambient_dim)


def minkowski_sum(c: Cone, d: Cone) -> Cone:
    if c.ambient_dim != d.ambient_dim:
        raise DimensionMismatch("cones live in different dimensions")
    return Cone.from_generators(
        list(c.rays) + list(d.rays),
        list(c.lineality.integer_basis) + list(d.lineality.integer_basis),
        ambient_dim=c.ambient_dim,
    )


def intersect(c: Cone, d: Cone) -> Cone:
    if c.ambient_dim != d.ambient_dim:
        raise DimensionMismatch("cones live in different dimensions")
    return Cone.from_halfspaces(
        list(c.equations.integer_basis) + list(d.equations.integer_basis),
        list(c.facets) + list(d.facets),
        ambient_dim=c.ambient_dim,
    )


def equal(c: Cone, d: Cone) -> bool:
    return c == d


def contains(c: Cone, x) -> bool:
    return c.contains(x)


def relint_contains(c: Cone, x) -> bool:
    return c.relint_contains(x)


def relint_point(c: Cone) -> Vec:
    return c.relint_point()


# -- faces ----------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A nonempty face of a parent cone.

    ``active_set`` indexes the parent's :attr:`Cone.facets` that vanish on
    the face; ``ray_set`` indexes the parent's rays lying in it.
    """

    cone: Cone
    active_set: frozenset
    ray_set: frozenset
    dim: int

    def __le__(self, other: "Face") -> bool:
        return self.ray_set <= other.ray_set


class FaceLattice:
    """All nonempty faces of a cone, graded by dimension."""

    def __init__(self, cone: Cone, faces: list[Face]):
        self.cone = cone
        self.faces = sorted(faces, key=lambda f: (f.dim, sorted(f.ray_set)))
        self._by_key = {f.cone.key: i for i, f in enumerate(self.faces)}

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    @property
    def minimum(self) -> Face:
        return self.faces[0]

    @property
    def maximum(self) -> Face:
        return self.faces[-1]

    def leq(self, f: Face, g: Face) -> bool:
        return f.ray_set <= g.ray_set

    def find(self, c: Cone) -> Face | None:
        i = self._by_key.get(c.key)
        return None if i is None else self.faces[i]

    def f_vector(self) -> list[int]:
        counts = [0] * (self.cone.ambient_dim + 1)
        for f in self.faces:
            counts[f.dim] += 1
        return counts


def _build_face_lattice(c: Cone) -> FaceLattice:
    lin, rays = c._realize_v()
    facets = c.facets
    zero = [frozenset(j for j, r in enumerate(rays) if dot(a, r) == 0) for a in facets]
    top = frozenset(range(len(rays)))
    seen = {top}
    stack = [top]
    while stack:
        s = stack.pop()
        for z in zero:
            t = s & z
            if t != s and t not in seen:
                seen.add(t)
                stack.append(t)
    faces = []
    for s in seen:
        frays = tuple(rays[j] for j in sorted(s))
        active = frozenset(i for i, z in enumerate(zero) if s <= z)
        if s == top:
            fc = c
        else:
            fc = Cone(c.ambient_dim, vrep=(lin, frays))
        faces.append(Face(fc, active, s, lin.dim + rank(frays)))
    return FaceLattice(c, faces)


def face_lattice(c: Cone) -> FaceLattice:
    return c._face_lattice


def as_face(c: Cone, f) -> Face:
    """Resolve ``f`` (a Face or a Cone) to a face of ``c``."""
    if isinstance(f, Face):
        if f.cone.ambient_dim != c.ambient_dim:
            raise DimensionMismatch("face in a different dimension")
        cone = f.cone
    else:
        cone = f
    found = face_lattice(c).find(cone)
    if found is None:
        raise NotAFace(f"{cone!r} is not a face of {c!r}")
    return found


def normal_cone(c: Cone, f) -> Cone:
    """``N_F C``: active facet normals plus the complement of ``lin(C)``."""
    face = as_face(c, f)
    eqs, facets = c._realize_h()
    gens = tuple(sorted(facets[i] for i in face.active_set))
    return Cone(c.ambient_dim, vrep=(eqs, gens))


def tangent_cone(c: Cone, f) -> Cone:
    return polar(normal_cone(c, f))
