"""Certified sign evaluation of integer linear forms at float points.

Float64 samples are dyadic rationals, so every sign below is the exact sign
of ``row . x``.  The float dot product decides it whenever its magnitude
exceeds a forward error bound; the remaining points are redone in exact
arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

_EPS = np.finfo(np.float64).eps


def _exact_dot(row: Sequence[int], x: np.ndarray) -> Fraction:
    return sum(a * Fraction(float(v)) for a, v in zip(row, x))


def all_satisfied(x: np.ndarray, rows: Sequence[Sequence[int]], relation: str) -> np.ndarray:
    """Mask of points where ``row . x`` relates to 0 by ``relation`` for all rows.

    ``relation`` is ``"<"``, ``"<="`` or ``"=="``.
    """
    n = x.shape[0]
    if not rows:
        return np.ones(n, dtype=bool)
    u = np.array(rows, dtype=np.float64)
    vals = x @ u.T
    bound = 8.0 * (x.shape[1] + 2) * _EPS * (np.abs(x) @ np.abs(u).T)
    if relation == "==":
        sure_true = np.zeros(vals.shape, dtype=bool)
        sure_false = np.abs(vals) > bound
    else:
        sure_true = vals < -bound
        sure_false = vals > bound
    state = np.full(n, -1, dtype=np.int8)
    state[sure_true.all(axis=1)] = 1
    state[sure_false.any(axis=1)] = 0
    for i in np.nonzero(state == -1)[0]:
        ok = True
        for row in rows:
            s = _exact_dot(row, x[i])
            if (relation == "<" and s >= 0) or (relation == "<=" and s > 0) or (relation == "==" and s != 0):
                ok = False
                break
        state[i] = 1 if ok else 0
    return state == 1


def cone_membership(x: np.ndarray, equations: Sequence[Sequence[int]], facets: Sequence[Sequence[int]]) -> np.ndarray:
    mask = all_satisfied(x, facets, "<=")
    if equations and mask.any():
        idx = np.nonzero(mask)[0]
        mask[idx] = all_satisfied(x[idx], equations, "==")
    return mask
