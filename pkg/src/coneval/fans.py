"""Fans, fan valuations and their identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

from .cones import Cone, face_lattice, intersect
from .exact_linalg import Subspace, dot, is_zero, to_rational
from .reports import Report


class FanError(ValueError):
    pass


@dataclass
class Fan:
    """Finite set of closed cones with common linear hull, meeting in faces."""

    cones: list[Cone]
    lin_hull: Subspace | None
    lineality: Subspace | None

    @classmethod
    def trusted(cls, cones: Iterable[Cone], lin_hull: Subspace | None = None, lineality: Subspace | None = None) -> "Fan":
        cones = list(cones)
        if cones:
            lin_hull = lin_hull if lin_hull is not None else cones[0].lin_hull
            lineality = lineality if lineality is not None else cones[0].lineality
        return cls(cones, lin_hull, lineality)

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    @property
    def ambient_dim(self) -> int | None:
        return self.cones[0].ambient_dim if self.cones else None

    @property
    def dim(self) -> int:
        return self.lin_hull.dim if self.lin_hull is not None else -1

    @property
    def rank(self) -> int:
        if not self.cones:
            return -1
        return self.lin_hull.dim - self.lineality.dim


def _is_face(c: Cone, f: Cone) -> bool:
    return face_lattice(c).find(f) is not None


def validate_fan(cones: Iterable[Cone]) -> Fan:
    """Check the two fan axioms exactly and return the fan.

    Raises :class:`FanError` naming the first offending pair.
    """
    cones = list(dict.fromkeys(cones))
    if not cones:
        return Fan([], None, None)
    d = cones[0].ambient_dim
    lin = cones[0].lin_hull
    for i, c in enumerate(cones):
        if c.ambient_dim != d:
            raise FanError(f"cone {i} lives in dimension {c.ambient_dim}, expected {d}")
        if c.lin_hull != lin:
            raise FanError(f"cone {i} has a different linear hull than cone 0")
    for i, j in combinations(range(len(cones)), 2):
        m = intersect(cones[i], cones[j])
        if not _is_face(cones[i], m) or not _is_face(cones[j], m):
            raise FanError(f"cones {i} and {j} do not intersect in a common face")
    return Fan(cones, lin, cones[0].lineality)


def _signs_on(c: Cone, normal: Sequence) -> tuple[bool, bool]:
    """Whether ``normal . x`` takes positive / negative values on ``c``."""
    lin_nonzero = any(dot(normal, l) != 0 for l in c.lineality.basis)
    vals = [dot(normal, r) for r in c.rays]
    return lin_nonzero or any(v > 0 for v in vals), lin_nonzero or any(v < 0 for v in vals)


def fan_intersect(fan: Fan, normal: Sequence, side: str) -> Fan:
    """``{C ∩ S : C in fan, relint(C) ∩ S ≠ ∅}``.

    ``S`` is ``H^<=``, ``H^>=`` or ``H`` (``side`` one of ``"<="``, ``">="``,
    ``"="``) for the hyperplane ``H = lin(fan) ∩ normal^⊥``.
    """
    if side not in ("<=", ">=", "="):
        raise ValueError(f"unknown side {side!r}")
    if not fan.cones:
        return Fan([], None, None)
    normal = tuple(to_rational(a) for a in normal)
    d = fan.ambient_dim
    if is_zero(fan.lin_hull.project(normal)):
        raise FanError("hyperplane does not cut lin(fan) in a hyperplane")
    neg = tuple(-a for a in normal)
    halfspace = {
        "<=": Cone.from_halfspaces([], [normal], ambient_dim=d),
        ">=": Cone.from_halfspaces([], [neg], ambient_dim=d),
        "=": Cone.from_halfspaces([normal], [], ambient_dim=d),
    }[side]
    out = []
    for c in fan.cones:
        pos, negv = _signs_on(c, normal)
        if side == "<=":
            meets = negv or not pos
        elif side == ">=":
            meets = pos or not negv
        else:
            meets = (pos and negv) or (not pos and not negv)
        if meets:
            out.append(intersect(c, halfspace))
    if not out:
        return Fan([], None, None)
    if side == "=":
        lin = fan.lin_hull.intersect(Subspace.kernel([normal], d))
    else:
        lin = fan.lin_hull
    return Fan.trusted(out, lin_hull=lin)


@dataclass
class ConeValuation:
    """A map on cones into an abelian group, given extensionally.

    ``equal`` decides equality of two values; the default is ``==``.
    """

    fn: Callable[[Cone], Any]
    zero: Any = 0
    equal: Callable[[Any, Any], bool] = field(default=lambda a, b: a == b)
    name: str = "phi"

    def __call__(self, c: Cone):
        return self.fn(c)


def cone_count() -> ConeValuation:
    return ConeValuation(lambda c: 1, 0, name="count")


def evaluate(phi: ConeValuation, fan: Fan):
    total = phi.zero
    for c in fan.cones:
        total = total + phi(c)
    return total


def check_fan_valuation_identity(phi: ConeValuation, fan: Fan, normal: Sequence) -> Report:
    lhs = evaluate(phi, fan)
    le = evaluate(phi, fan_intersect(fan, normal, "<="))
    ge = evaluate(phi, fan_intersect(fan, normal, ">="))
    eq = evaluate(phi, fan_intersect(fan, normal, "="))
    rhs = le + ge - eq
    ok = phi.equal(lhs, rhs)
    return Report(
        "fan-valuation",
        f"{phi.name} on fan of {len(fan)} cones, H = {list(map(str, normal))}^perp",
        ok,
        {"lhs": lhs, "rhs": rhs},
    )


def check_deletion_restriction(phi: ConeValuation, arr, normal: Sequence) -> Report:
    from .arrangements import deletion, is_singleton, regions, restriction

    if is_singleton(arr) is not None:
        raise FanError("deletion-restriction needs an arrangement that is not a singleton")
    lhs = evaluate(phi, regions(arr))
    rhs = evaluate(phi, regions(deletion(arr, normal))) + evaluate(phi, regions(restriction(arr, normal)))
    ok = phi.equal(lhs, rhs)
    return Report(
        "deletion-restriction",
        f"{phi.name}, {len(arr)} hyperplanes, H = {list(normal)}^perp",
        ok,
        {"lhs": lhs, "rhs": rhs},
    )


def whitney_coefficients(d: int) -> list[list[int]]:
    """``coef[i][k]``: multiplicity of ``b_k`` in ``a_i`` (``0 <= i < d``)."""
    coef = [[0] * (d + 1) for _ in range(d)]
    for k in range(1, d + 1):
        for i in range(k, d + 1):
            coef[k - 1][i] = 1 if (i - k) % 2 == 0 else -1
    return coef


def whitney_decomposition_check(
    b: dict[int, Any] | Sequence, arr, phi: ConeValuation | None = None, value=None
) -> Report:
    """Predict ``phi(N(arr))`` from singleton values and compare.

    ``b[k]`` is the value of the valuation on a ``k``-singleton fan,
    ``1 <= k <= d``.  The prediction is ``sum_i a_i w_i(arr)`` with
    ``a_{k-1} = sum_{i >= k} (-1)^(k-i) b_i``; it is collapsed onto the
    ``b_k`` before summing so that independent estimates combine correctly.
    """
    from .arrangements import regions, whitney_numbers

    d = arr.ambient_dim
    if not isinstance(b, dict):
        b = {k: b[k] for k in range(1, d + 1)}
    w = whitney_numbers(arr)
    coef = whitney_coefficients(d)
    weights = {k: sum(w[i] * coef[i][k] for i in range(d)) for k in range(1, d + 1)}
    predicted = None
    for k in range(1, d + 1):
        if weights[k] == 0:
            continue
        term = weights[k] * b[k]
        predicted = term if predicted is None else predicted + term
    if predicted is None:
        predicted = phi.zero if phi is not None else 0
    if value is None:
        if phi is None:
            raise ValueError("either phi or value is required")
        value = evaluate(phi, regions(arr))
    equal = phi.equal if phi is not None else (lambda x, y: x == y)
    a_vals = {i: [coef[i][k] for k in range(1, d + 1)] for i in range(d)}
    return Report(
        "whitney-decomposition",
        f"{len(arr)} hyperplanes in dimension {d}",
        equal(value, predicted),
        {"value": value, "predicted": predicted, "weights_on_b": weights, "a_in_terms_of_b": a_vals},
    )
