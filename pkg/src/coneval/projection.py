"""Metric projection onto cones, Moreau fans and interval posets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .cones import Cone, Face, as_face, face_lattice, minkowski_sum, normal_cone
from .exact_linalg import Subspace, Vec, dot, primitive, projection_matrix, sub, to_rational
from .fans import Fan, validate_fan
from ._robust import all_satisfied
from .reports import Report


@dataclass(frozen=True)
class ProjectionResult:
    point: Vec
    face: Face
    distance_sq: Fraction


@dataclass(frozen=True)
class _FaceData:
    face: Face
    span: Subspace
    strict: tuple[int, ...]  # indices of facets that must be negative at the projection


@lru_cache(maxsize=512)
def _face_data(c: Cone) -> tuple[_FaceData, ...]:
    out = []
    nfacets = len(c.facets)
    for f in face_lattice(c):
        span = Subspace.span(list(f.cone.lineality.basis) + list(f.cone.rays), c.ambient_dim)
        strict = tuple(j for j in range(nfacets) if j not in f.active_set)
        out.append(_FaceData(f, span, strict))
    return tuple(out)


def metric_projection(c: Cone, x: Sequence) -> ProjectionResult:
    """Exact nearest point of ``c`` to ``x`` by searching all faces.

    A face ``F`` is accepted when the orthogonal projection ``y`` of ``x`` onto
    ``lin F`` lies in ``relint F`` and ``x - y`` lies in ``N_F C``.  Exactly one
    face passes; a second acceptance raises ``AssertionError``.
    """
    x = tuple(to_rational(a) for a in x)
    if len(x) != c.ambient_dim:
        raise ValueError("point has wrong dimension")
    facets = c.facets
    rays = c.rays
    found = None
    for fd in _face_data(c):
        y = fd.span.project(x)
        if any(dot(facets[j], y) >= 0 for j in fd.strict):
            continue
        r = sub(x, y)
        if any(dot(r, g) > 0 for g in rays):
            continue
        if found is not None:
            raise AssertionError("metric projection accepted two faces")
        found = ProjectionResult(y, fd.face, dot(r, r))
    if found is None:
        raise AssertionError("metric projection accepted no face")
    return found


def pi_F(c: Cone, f) -> Cone:
    """``F + N_F C``, the closed set of points projecting into ``F``."""
    face = as_face(c, f)
    return minkowski_sum(face.cone, normal_cone(c, face))


def moreau_fan(c: Cone) -> Fan:
    return validate_fan([pi_F(c, f) for f in face_lattice(c)])


# -- fast exact face classification ---------------------------------------


class FaceClassifier:
    """Vectorised form of :func:`metric_projection` for many points.

    For each face ``F`` with projection matrix ``P`` the acceptance test is a
    list of sign conditions ``(P a) . x < 0`` (facets not containing ``F``)
    and ``((I - P) r) . x <= 0`` (rays of ``C``), with exact integer rows.
    They are evaluated in float64 with a forward error bound; points whose
    sign is not certified are re-evaluated exactly as dyadic rationals.
    """

    def __init__(self, c: Cone):
        self.cone = c
        d = c.ambient_dim
        self.faces: list[Face] = []
        self.strict_rows: list[list[tuple[int, ...]]] = []
        self.weak_rows: list[list[tuple[int, ...]]] = []
        for fd in _face_data(c):
            p = projection_matrix(fd.span)
            strict = [primitive([dot(row, c.facets[j]) for row in p]) for j in fd.strict]
            weak = []
            for r in c.rays:
                pr = [dot(row, r) for row in p]
                w = [Fraction(r[i]) - pr[i] for i in range(d)]
                if any(w):
                    weak.append(primitive(w))
            self.faces.append(fd.face)
            self.strict_rows.append(strict)
            self.weak_rows.append(weak)
        self.dims = np.array([f.dim for f in self.faces], dtype=np.int64)

    def classify(self, x: np.ndarray) -> np.ndarray:
        """Index into :attr:`faces` of the face containing each projection."""
        x = np.asarray(x, dtype=np.float64)
        result = np.full(x.shape[0], -1, dtype=np.int64)
        for i in range(len(self.faces)):
            todo = np.nonzero(result == -1)[0]
            if todo.size == 0:
                break
            xs = x[todo]
            cand = all_satisfied(xs, self.strict_rows[i], "<")
            if cand.any():
                sel = todo[cand]
                result[sel[all_satisfied(x[sel], self.weak_rows[i], "<=")]] = i
        if (result == -1).any():
            raise AssertionError("a sample was not assigned to any face")
        return result

    def face_dims(self, x: np.ndarray) -> np.ndarray:
        return self.dims[self.classify(x)]


@lru_cache(maxsize=512)
def face_classifier(c: Cone) -> FaceClassifier:
    return FaceClassifier(c)


# -- interval posets --------------------------------------------------------


@dataclass
class IntervalPoset:
    """Nonempty intervals ``[a, c]`` of a finite poset, by reverse inclusion."""

    elements: list[tuple[int, int]]
    source_leq: Callable[[int, int], bool]

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        (a, c), (a2, c2) = self.elements[i], self.elements[j]
        return self.source_leq(a, a2) and self.source_leq(c2, c)

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not any(j != i and self.leq(i, j) for j in range(len(self)))]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not any(j != i and self.leq(j, i) for j in range(len(self)))]


def interval_poset(size: int, leq: Callable[[int, int], bool]) -> IntervalPoset:
    """Intervals of the poset on ``range(size)`` with order ``leq``."""
    elems = [(a, c) for a in range(size) for c in range(size) if leq(a, c)]
    return IntervalPoset(elems, leq)


def check_moreau_isomorphism(c: Cone) -> Report:
    """Compare the face poset of the Moreau fan with the interval poset.

    The candidate bijection sends ``[F, G]`` to ``F + N_G C``; it must be
    onto the faces of the Moreau fan, injective, and preserve the order in
    both directions.
    """
    lat = face_lattice(c)
    faces = lat.faces
    ip = interval_poset(len(faces), lambda i, j: lat.leq(faces[i], faces[j]))
    images = [minkowski_sum(faces[a].cone, normal_cone(c, faces[g])) for a, g in ip.elements]

    moreau_faces = {}
    for cell in moreau_fan(c).cones:
        for f in face_lattice(cell):
            moreau_faces.setdefault(f.cone.key, f.cone)

    injective = len({im.key for im in images}) == len(images)
    onto = {im.key for im in images} == set(moreau_faces)
    order_ok = True
    bad = None
    for i in range(len(images)):
        for j in range(len(images)):
            a = ip.leq(i, j)
            b = images[j].contains_cone(images[i])
            if a != b:
                order_ok = False
                bad = (ip.elements[i], ip.elements[j])
                break
        if not order_ok:
            break
    ok = injective and onto and order_ok and len(images) == len(moreau_faces)
    return Report(
        "moreau-iso",
        f"cone of dim {c.dim} in R^{c.ambient_dim} with {len(faces)} faces",
        ok,
        {
            "intervals": len(images),
            "moreau_faces": len(moreau_faces),
            "injective": injective,
            "onto": onto,
            "order_preserving": order_ok,
            "first_order_violation": bad,
        },
    )
