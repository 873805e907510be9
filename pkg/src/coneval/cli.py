"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import indicator as ind
from .arrangements import ArrangementError, char_poly_delres, flats_lattice, regions, region_sign_vectors, whitney_numbers
from .cones import Cone, DimensionMismatch, face_lattice
from .exact_linalg import format_rational, to_rational
from .fans import FanError
from .intrinsic import convergence_trace, fan_intrinsic_volumes, mc_intrinsic_volumes, verify_klivans_swartz, verify_zaslavsky
from .io import FormatError, arrangement_from_dict, cone_from_dict, cone_to_dict, fan_from_dict, load_json
from .projection import check_moreau_isomorphism, metric_projection, moreau_fan
from .reports import Report, jsonable
from .suite import run_suite


class UsageError(Exception):
    pass


# -- output helpers -----------------------------------------------------------


def _emit(args, payload: dict, text: str, rows: list[dict] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(jsonable(payload), sort_keys=True))
    elif args.format == "csv":
        if rows is None:
            raise UsageError("this command has no CSV output")
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: jsonable(v) for k, v in r.items()})
        sys.stdout.write(buf.getvalue())
    else:
        print(text)


def _emit_reports(args, reports: list[Report]) -> int:
    if args.format == "json":
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        _emit(args, {}, "", [{"theorem": r.theorem, "instance": r.instance, "status": r.status} for r in reports])
    else:
        for r in reports:
            print(r.line())
    return 0 if all(reports) else 1


def _vec(s: str) -> tuple:
    try:
        return tuple(to_rational(a) for a in s.split(","))
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad vector {s!r}: {e}") from None


def _cone(args) -> Cone:
    if not args.cone:
        raise UsageError("--cone is required")
    return cone_from_dict(load_json(args.cone))


def _arr(args):
    path = getattr(args, "arrangement", None) or getattr(args, "input", None)
    if not path:
        raise UsageError("--arrangement is required")
    return arrangement_from_dict(load_json(path))


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format_rational(a) for a in v) + ")"


# -- commands -----------------------------------------------------------------


def cmd_chi(args) -> int:
    a = _arr(args)
    w = whitney_numbers(a)
    rows = [{"k": k, "whitney": w[k]} for k in range(a.dim + 1)]
    payload = {"polynomial": str(w), "coefficients": list(w.coefficients)}
    if args.check and a.normals:
        dr = char_poly_delres(a)
        payload["deletion_restriction"] = list(dr.coefficients)
        if dr != w:
            _emit(args, payload, f"{w}\nMISMATCH deletion-restriction gives {dr}", rows)
            return 1
    _emit(args, payload, str(w), rows)
    return 0


def cmd_regions(args) -> int:
    a = _arr(args)
    fan = regions(a)
    signs = region_sign_vectors(a)
    rows = [{"index": i, "signs": "".join("+" if s > 0 else "-" for s in sv)} for i, sv in enumerate(signs)]
    payload = {"count": len(fan), "sign_vectors": [list(s) for s in signs], "cones": [cone_to_dict(c) for c in fan.cones]}
    text = "\n".join([f"{len(fan)} regions"] + [r["signs"] or "(empty)" for r in rows])
    _emit(args, payload, text, rows)
    return 0


def cmd_flats(args) -> int:
    a = _arr(args)
    lat = flats_lattice(a)
    rows = [
        {
            "index": i,
            "dim": f.dim,
            "mobius": lat.mu(lat.bottom, i),
            "hyperplanes": " ".join(map(str, sorted(lat.hyperplanes[i]))),
        }
        for i, f in enumerate(lat.flats)
    ]
    payload = {"flats": [dict(r, basis=[list(b) for b in lat.flats[r["index"]].integer_basis]) for r in rows]}
    text = "\n".join(f"L{r['index']}  dim {r['dim']}  mu {r['mobius']}  contained in {{{r['hyperplanes']}}}" for r in rows)
    _emit(args, payload, text, rows)
    return 0


def cmd_project(args) -> int:
    c = _cone(args)
    x = _vec(args.point)
    if len(x) != c.ambient_dim:
        raise UsageError("point has wrong dimension")
    res = metric_projection(c, x)
    payload = {
        "point": list(res.point),
        "face_dim": res.face.dim,
        "active_set": sorted(res.face.active_set),
        "distance_sq": res.distance_sq,
    }
    text = (
        f"projection {_fmt_vec(res.point)}\nface dimension {res.face.dim}\n"
        f"active facets {sorted(res.face.active_set)}\ndistance^2 {format_rational(res.distance_sq)}"
    )
    _emit(args, payload, text)
    return 0


def cmd_moreau(args) -> int:
    c = _cone(args)
    fan = moreau_fan(c)
    rep = check_moreau_isomorphism(c)
    faces = face_lattice(c).faces
    rows = [{"face_dim": f.dim, "cell_dim": cell.dim} for f, cell in zip(faces, fan.cones)]
    payload = {"cells": [cone_to_dict(x) for x in fan.cones], "isomorphism": rep.to_dict()}
    _emit(args, payload, f"{len(fan)} Moreau cells\n{rep.line()}", rows)
    return 0 if rep else 1


def cmd_intrinsic(args) -> int:
    if args.trace:
        c = _cone(args)
        rows = [
            dict({"samples": n}, **{f"v{k}": v for k, v in enumerate(vals)})
            for n, vals in convergence_trace(c, args.samples, args.seed, args.trace)
        ]
        _emit(args, {"trace": rows, "seed": args.seed}, "\n".join(json.dumps(r) for r in rows), rows)
        return 0
    if args.cone:
        est = mc_intrinsic_volumes(_cone(args), args.samples, args.seed)
    elif args.fan:
        est = fan_intrinsic_volumes(fan_from_dict(load_json(args.fan)), args.samples, args.seed)
    else:
        est = fan_intrinsic_volumes(regions(_arr(args)), args.samples, args.seed)
    rows = [
        {"k": k, "estimate": est.values[k], "ci_radius": est.ci_radius(k, args.z)} for k in range(est.ambient_dim + 1)
    ]
    payload = dict(est.to_dict(), z=args.z, ci_radius=[r["ci_radius"] for r in rows])
    text = "\n".join(f"v_{r['k']} = {r['estimate']:.6f} +- {r['ci_radius']:.6f}" for r in rows)
    text += f"\n(N = {args.samples}, seed = {args.seed}, z = {args.z})"
    _emit(args, payload, text, rows)
    return 0


def cmd_vk(args) -> int:
    c = _cone(args)
    if not 0 <= args.k <= c.ambient_dim:
        raise UsageError("k out of range")
    f = ind.Vk(c, args.k)
    payload = f.to_dict()
    lines = [f"V_{args.k}: {len(f)} terms"]
    for cone, coef in sorted(f.terms.items(), key=lambda t: t[0].key):
        lines.append(f"{coef:+d} [rays {[_fmt_vec(r) for r in cone.rays]}, lineality {[_fmt_vec(l) for l in cone.lineality.integer_basis]}]")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_exceptional(args) -> int:
    a = _arr(args)
    normals = ind.exceptional_arrangement(a)
    rows = [{"normal": " ".join(map(str, n))} for n in normals]
    _emit(args, {"normals": [list(n) for n in normals]}, "\n".join(_fmt_vec(n) for n in normals) or "(empty)", rows)
    return 0


def _ks(args) -> list[int]:
    return [args.k] if args.k is not None else []


def cmd_verify(args) -> int:
    t = args.theorem
    if t in ("key", "vk-arr", "klivans-swartz-indicator", "zaslavsky"):
        a = _arr(args)
        if t == "key":
            reports = [ind.lemma_key_check(a)]
        elif t == "vk-arr":
            ks = _ks(args) or list(range(a.ambient_dim + 1))
            reports = [ind.theorem_Vk_arr_check(a, k) for k in ks]
        elif t == "klivans-swartz-indicator":
            reports = [ind.klivans_swartz_indicator_check(a)]
        else:
            reports = [verify_zaslavsky(regions(a), args.samples, args.seed, args.z)]
        return _emit_reports(args, reports)
    if not args.cone and args.input:
        args.cone = args.input
    c = _cone(args)
    if t == "vk-val":
        if not args.normal:
            raise UsageError("--normal is required for vk-val")
        ks = _ks(args) or list(range(c.ambient_dim + 1))
        reports = [ind.verify_Vk_valuation(c, _vec(args.normal), k) for k in ks]
    elif t == "polar-duality":
        ks = _ks(args) or list(range(c.ambient_dim + 1))
        reports = [ind.verify_polar_duality(c, k) for k in ks]
    elif t == "hug-kabluchko":
        reports = [ind.hug_kabluchko_check(c)]
    elif t == "sommerville":
        reports = [ind.sommerville_check(c)]
    elif t == "moreau-iso":
        reports = [check_moreau_isomorphism(c)]
    else:
        reports = [ind.euler_involution_check(ind.IndicatorElement.of(c))]
    return _emit_reports(args, reports)


def cmd_verify_ks(args) -> int:
    a = _arr(args)
    rep = verify_klivans_swartz(a, args.samples, args.seed, args.z)
    rows = rep.details["table"]
    if args.format == "json":
        print(rep.to_json())
    elif args.format == "csv":
        _emit(args, {}, "", rows)
    else:
        print(rep.line())
        for r in rows:
            print(f"  k={r['k']}  w_k={r['whitney']}  estimate={r['estimate']:.6f}  tol={r['tolerance']:.6f}  {'ok' if r['ok'] else 'FAIL'}")
    return 0 if rep else 1


def cmd_suite(args) -> int:
    log = print if args.format == "text" else None
    reports = run_suite(log)
    if args.format != "text":
        return _emit_reports(args, reports)
    return 0 if all(reports) else 1


# -- parser -------------------------------------------------------------------


THEOREMS = [
    "vk-val",
    "key",
    "vk-arr",
    "hug-kabluchko",
    "sommerville",
    "polar-duality",
    "moreau-iso",
    "klivans-swartz-indicator",
    "zaslavsky",
    "euler-involution",
]


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("-N", "--samples", type=_positive_int, default=100_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--z", type=_positive_float, default=4.0, help="confidence multiplier")

    p = argparse.ArgumentParser(prog="coneval", description="Valuations on cones, fans and hyperplane arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *inputs):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for opt in inputs:
            sp.add_argument(f"--{opt}")
        sp.set_defaults(func=fn)
        return sp

    sp = add("chi", cmd_chi, "characteristic polynomial of an arrangement", "arrangement")
    sp.add_argument("--check", action="store_true", help="cross-check by deletion-restriction")
    add("regions", cmd_regions, "regions of an arrangement", "arrangement")
    add("flats", cmd_flats, "lattice of flats with Möbius values", "arrangement")
    sp = add("project", cmd_project, "metric projection of a point", "cone")
    sp.add_argument("--point", required=True, help="comma separated rationals")
    add("moreau", cmd_moreau, "Moreau fan and the interval-poset check", "cone")
    sp = add("intrinsic", cmd_intrinsic, "Monte Carlo intrinsic volumes", "cone", "fan", "arrangement")
    sp.add_argument("--trace", type=_positive_int, default=0, help="emit a convergence trace with this many points")
    sp = add("vk", cmd_vk, "the indicator element V_k of a cone", "cone")
    sp.add_argument("-k", type=int, required=True)
    add("exceptional", cmd_exceptional, "exceptional hyperplanes of an arrangement", "arrangement")
    sp = add("verify", cmd_verify, "verify one identity", "cone", "arrangement", "input")
    sp.add_argument("--theorem", choices=THEOREMS, required=True)
    sp.add_argument("-k", type=int, default=None)
    sp.add_argument("--normal", help="hyperplane normal for vk-val")
    add("verify-ks", cmd_verify_ks, "Monte Carlo coefficient comparison", "arrangement")
    add("suite", cmd_suite, "run the acceptance battery")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    if args.command == "intrinsic" and not args.trace and sum(map(bool, (args.cone, args.fan, args.arrangement))) != 1:
        print("error: give exactly one of --cone, --fan, --arrangement", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, FormatError, ArrangementError, FanError, DimensionMismatch, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
