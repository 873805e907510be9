"""JSON formats for cones, arrangements and fans.

Rationals are written as strings ``"p/q"`` (or ``"p"``); on input, integers
and such strings are accepted.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .arrangements import Arrangement
from .cones import Cone
from .exact_linalg import Subspace, format_rational, to_rational
from .fans import Fan, validate_fan


class FormatError(ValueError):
    pass


def _vecs(raw, d: int, what: str) -> list[tuple]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise FormatError(f"{what} must be a list of vectors")
    out = []
    for v in raw:
        if not isinstance(v, list) or len(v) != d:
            raise FormatError(f"{what}: every vector needs {d} entries")
        try:
            out.append(tuple(to_rational(a) for a in v))
        except (TypeError, ValueError) as e:
            raise FormatError(f"{what}: {e}") from None
    return out


def _dim(obj: dict) -> int:
    d = obj.get("ambient_dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise FormatError("ambient_dim must be a nonnegative integer")
    return d


def _fmt(vs) -> list[list[str]]:
    return [[format_rational(a) for a in v] for v in vs]


def cone_from_dict(obj: dict) -> Cone:
    if not isinstance(obj, dict):
        raise FormatError("a cone must be a JSON object")
    d = _dim(obj)
    if "rays" in obj or "lineality" in obj:
        if "equations" in obj or "inequalities" in obj:
            raise FormatError("give either rays/lineality or equations/inequalities")
        return Cone.from_generators(_vecs(obj.get("rays"), d, "rays"), _vecs(obj.get("lineality"), d, "lineality"), ambient_dim=d)
    return Cone.from_halfspaces(
        _vecs(obj.get("equations"), d, "equations"), _vecs(obj.get("inequalities"), d, "inequalities"), ambient_dim=d
    )


def cone_to_dict(c: Cone) -> dict:
    return {"ambient_dim": c.ambient_dim, "rays": _fmt(c.rays), "lineality": _fmt(c.lineality.integer_basis)}


def arrangement_from_dict(obj: dict) -> Arrangement:
    if not isinstance(obj, dict):
        raise FormatError("an arrangement must be a JSON object")
    d = _dim(obj)
    sub = None
    if obj.get("subspace_basis") is not None:
        sub = Subspace.span(_vecs(obj["subspace_basis"], d, "subspace_basis"), d)
    return Arrangement.create(_vecs(obj.get("normals", []), d, "normals"), ambient_dim=d, subspace=sub)


def arrangement_to_dict(a: Arrangement) -> dict:
    out: dict[str, Any] = {"ambient_dim": a.ambient_dim, "normals": _fmt(a.normals)}
    if a.subspace.dim != a.ambient_dim:
        out["subspace_basis"] = _fmt(a.subspace.integer_basis)
    return out


def fan_from_dict(obj: dict) -> Fan:
    if not isinstance(obj, dict) or not isinstance(obj.get("cones"), list):
        raise FormatError("a fan needs a list of cones")
    d = _dim(obj)
    cones = []
    for c in obj["cones"]:
        if isinstance(c, dict) and "ambient_dim" not in c:
            c = dict(c, ambient_dim=d)
        cone = cone_from_dict(c)
        if cone.ambient_dim != d:
            raise FormatError("cone dimension differs from the fan's")
        cones.append(cone)
    return validate_fan(cones)


def fan_to_dict(f: Fan) -> dict:
    return {"ambient_dim": f.ambient_dim, "cones": [cone_to_dict(c) for c in f.cones]}


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None


def load_cone(path) -> Cone:
    return cone_from_dict(load_json(path))


def load_arrangement(path) -> Arrangement:
    return arrangement_from_dict(load_json(path))


def load_fan(path) -> Fan:
    return fan_from_dict(load_json(path))
