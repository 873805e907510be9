"""Double description method over the integers.

A cone is kept as ``lineality + cone(rays)``; inequalities are rows ``a``
meaning ``a . x <= 0``.  All vectors are primitive integer tuples, so every
update is exact integer arithmetic.
"""

from __future__ import annotations

from math import gcd
from functools import reduce
from typing import Sequence

from .exact_linalg import nullspace, primitive

IntVec = tuple[int, ...]


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _prim(v: Sequence[int]) -> IntVec:
    g = reduce(gcd, v, 0)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


class DDState:
    """Generators of ``{x : E x = 0, A x <= 0}`` for the rows fed so far."""

    __slots__ = ("dim", "lineality", "rays", "constraints")

    def __init__(self, dim: int, lineality: list[IntVec], rays: list[IntVec], constraints: list[IntVec]):
        self.dim = dim
        self.lineality = lineality
        self.rays = rays
        self.constraints = constraints

    @classmethod
    def from_equations(cls, dim: int, equations: Sequence[Sequence[int]]) -> "DDState":
        lin = [primitive(v) for v in nullspace(list(equations), dim)]
        return cls(dim, lin, [], [])

    def add(self, a: Sequence[int]) -> "DDState":
        """Intersect with the halfspace ``a . x <= 0``."""
        a = tuple(a)
        if not any(a):
            return self
        lin_vals = [_dot(a, l) for l in self.lineality]
        piv = next((i for i, v in enumerate(lin_vals) if v != 0), None)
        if piv is not None:
            l = self.lineality[piv]
            al = lin_vals[piv]
            if al > 0:
                l = tuple(-x for x in l)
                al = -al
            new_lin = []
            for i, (m, am) in enumerate(zip(self.lineality, lin_vals)):
                if i == piv:
                    continue
                v = tuple(al * x - am * y for x, y in zip(m, l))
                new_lin.append(_prim(v))
            new_rays = []
            for r in self.rays:
                ar = _dot(a, r)
                v = tuple(-al * x + ar * y for x, y in zip(r, l))
                new_rays.append(_prim(v))
            new_rays.append(_prim(l))
            return DDState(self.dim, new_lin, new_rays, self.constraints + [a])

        vals = [_dot(a, r) for r in self.rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        if not pos:
            return DDState(self.dim, self.lineality, self.rays, self.constraints + [a])
        neg = [i for i, v in enumerate(vals) if v < 0]
        keep = [self.rays[i] for i, v in enumerate(vals) if v <= 0]
        if neg:
            zsets = [
                frozenset(j for j, c in enumerate(self.constraints) if _dot(c, r) == 0)
                for r in self.rays
            ]
            # rank bound for adjacency: common active set must cut a 2-face
            need = len(self.rays) > 2
            for p in pos:
                zp = zsets[p]
                for n in neg:
                    common = zp & zsets[n]
                    if need and not _adjacent(common, zsets, p, n):
                        continue
                    vp, vn = vals[p], vals[n]
                    v = tuple(vp * x - vn * y for x, y in zip(self.rays[n], self.rays[p]))
                    keep.append(_prim(v))
        return DDState(self.dim, self.lineality, keep, self.constraints + [a])


def _adjacent(common: frozenset, zsets: list[frozenset], p: int, n: int) -> bool:
    for i, z in enumerate(zsets):
        if i != p and i != n and common <= z:
            return False
    return True


def hrep_to_vrep(
    dim: int, equations: Sequence[Sequence[int]], inequalities: Sequence[Sequence[int]]
) -> tuple[list[IntVec], list[IntVec]]:
    """Lineality basis and extreme rays of ``{E x = 0, A x <= 0}``."""
    state = DDState.from_equations(dim, equations)
    for a in inequalities:
        state = state.add(a)
    return state.lineality, state.rays
