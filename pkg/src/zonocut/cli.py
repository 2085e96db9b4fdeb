"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable, Optional

from .arrangement import ArrangementError, conforms, format_signs
from .construction import (
    EasterEggParams,
    ParameterError,
    ProjectionSearchError,
    easteregg_matrix,
    selected_vertex_signs,
    surviving_edge_signs,
)
from .projection import (
    NotInteriorError,
    ShadowAmbiguityError,
    facet_upper_bound,
    polar_polygon,
    shadow_boundary_walk,
    shadow_polygon,
    survives,
)
from .serialize import (
    DEFAULT_DIGITS,
    dumps,
    load_matrix,
    matrix_json,
    off_text,
    polygon_json,
    polygon_svg,
    rat_str,
    strip_timing,
    vec_json,
)
from .verify import (
    check_boundary_walk,
    check_facet_embedding,
    check_facet_projection,
    check_selected_vertices,
    check_surviving_edges,
    check_survival_oracle,
    shadow_counts,
)
from .zonotope import DualZonotope, edge_sign_vectors, zonotope_vertices

USAGE_ERRORS = (ParameterError, ArrangementError, NotInteriorError, ShadowAmbiguityError,
                ProjectionSearchError, ValueError, OSError, KeyError, json.JSONDecodeError)


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj: dict, args) -> None:
    if getattr(args, "canonical", False):
        obj = strip_timing(obj)
    _emit(dumps(obj), args.out)


def _params(args) -> Optional[EasterEggParams]:
    if args.d is None and args.k is None:
        return None
    if args.d is None or args.k is None:
        raise UsageError("--d and --k must be given together")
    return EasterEggParams(args.d, args.k)


def _source(args):
    """(params or None, dual zonotope) from --matrix or --d/--k."""
    params = _params(args)
    if getattr(args, "matrix", None):
        if params is not None:
            raise UsageError("give either --matrix or --d/--k, not both")
        return None, DualZonotope(load_matrix(args.matrix), jobs=args.jobs)
    if params is None:
        raise UsageError("need --matrix or --d/--k")
    return params, DualZonotope(easteregg_matrix(params), jobs=args.jobs)


def _params_json(params: Optional[EasterEggParams]) -> Optional[dict]:
    if params is None:
        return None
    return {"d": params.d, "k": params.k, "n": params.n, "m": params.m, "alpha": rat_str(params.alpha)}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_build(args) -> int:
    params = _params(args)
    if params is None:
        raise UsageError("build needs --d and --k")
    A = easteregg_matrix(params)
    summary = f"m={params.m} n={params.n} alpha={rat_str(params.alpha)}\n"
    _emit(dumps(matrix_json(A, params=_params_json(params))), args.out)
    (sys.stdout if args.out else sys.stderr).write(summary)
    return 0


def _polygon_report(args, kind: str) -> int:
    params, Z = _source(args)
    P = shadow_polygon(Z)
    if kind == "section":
        P = polar_polygon(P)
    A = Z.arrangement
    out = {"object": kind, "params": _params_json(params), **polygon_json(P),
           "upper_bound": facet_upper_bound(A.m, A.d), "m": A.m, "d": A.d}
    notes = []
    if params is not None:
        counts = shadow_counts(params, Z)
        out["predicted"] = counts["predicted"]
        if "note" in counts:
            notes.append(counts["note"])
    if args.walk and Z.d >= 3:
        try:
            out["boundary_walk"] = [format_signs(s) for s in shadow_boundary_walk(Z)]
        except ShadowAmbiguityError as exc:
            notes.append(f"boundary walk unavailable: {exc}")
    out["notes"] = notes
    if args.format == "svg":
        _emit(polygon_svg(P, digits=args.digits), args.out)
    else:
        _emit_json(out, args)
    return 0


def cmd_shadow(args) -> int:
    return _polygon_report(args, "shadow")


def cmd_section(args) -> int:
    return _polygon_report(args, "section")


def _write_certs(directory: Optional[str], name: str, payload) -> Optional[str]:
    if not directory:
        return None
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    target = path / f"{name}.json"
    target.write_text(dumps(payload))
    return str(target)


def _survival_certs(Z: DualZonotope, sigmas) -> list:
    out = []
    for s in sigmas:
        ok, cert = survives(Z, s, 2)
        out.append({"sign": format_signs(s), "survives": ok, "rank": cert.rank,
                    "truncated_normals": [vec_json(r) for r in cert.truncated_normals],
                    "positive_combination": None if cert.positive_combination is None
                    else vec_json(cert.positive_combination)})
    return out


LEMMAS = ("4.2", "4.3", "2.2-oracle", "3.3", "3.4", "walk")


def run_check(lemma: str, args, params: Optional[EasterEggParams], Z: Optional[DualZonotope]) -> dict:
    if lemma in ("4.2", "4.3", "walk"):
        if params is None:
            raise UsageError(f"--lemma {lemma} needs --d and --k")
        if lemma != "4.2" and params.d < 3:
            raise UsageError(f"--lemma {lemma} needs d >= 3")
    if lemma == "4.2":
        rep = check_selected_vertices(params, Z)
    elif lemma == "4.3":
        rep = check_surviving_edges(params, Z)
        rep["certificates"] = _write_certs(args.certs, f"survival_d{params.d}_k{params.k}",
                                           _survival_certs(Z, surviving_edge_signs(params)))
    elif lemma == "walk":
        rep = check_boundary_walk(params, Z)
        rep["certificates"] = _write_certs(args.certs, f"walk_d{params.d}_k{params.k}",
                                           [format_signs(s) for s in shadow_boundary_walk(Z)])
    elif lemma == "2.2-oracle":
        rep = check_survival_oracle(trials=args.trials, seed=args.seed)
    elif lemma == "3.3":
        rep = check_facet_embedding()
    elif lemma == "3.4":
        p = params if params is not None else EasterEggParams(3, 1)
        if p.d != 3:
            raise UsageError("--lemma 3.4 needs d = 3")
        rep = check_facet_projection(p, seed=args.seed)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(lemma)
    return rep


def cmd_verify(args) -> int:
    params = _params(args)
    Z = DualZonotope(easteregg_matrix(params), jobs=args.jobs) if params is not None else None
    t0 = time.perf_counter()
    rep = run_check(args.lemma, args, params, Z)
    out = {"lemma": args.lemma, "params": _params_json(params), "result": rep,
           "timing": {"seconds": round(time.perf_counter() - t0, 3)}}
    _emit_json(out, args)
    return 0 if rep["passed"] else 1


def cmd_export(args) -> int:
    params, Z = _source(args)
    obj, fmt = args.object, args.format
    if fmt == "off":
        if obj not in ("zonotope", "dual"):
            raise UsageError("OFF export is for --object zonotope or dual")
        if Z.d != 3:
            raise UsageError(f"OFF export needs d = 3, got d = {Z.d}")
        A = Z.arrangement
        if obj == "dual":
            points = [x for x, _ in Z.vertices]
            signs = [s for _, s in Z.vertices]
            faces = [([i for i, s in enumerate(signs) if conforms(s, sigma)], A.combine(sigma))
                     for sigma in Z.regions]
        else:
            zv = zonotope_vertices(A, Z.regions)
            points = zv.points
            faces = [([i for i, (_, sigma) in enumerate(zv.vertices) if conforms(s, sigma)], x)
                     for x, s in Z.vertices]
        _emit(off_text(points, faces, digits=args.digits), args.out)
        return 0
    if obj not in ("shadow", "section"):
        raise UsageError("SVG export is for --object shadow or section")
    P = shadow_polygon(Z)
    if obj == "section":
        P = polar_polygon(P)
    _emit(polygon_svg(P, digits=args.digits), args.out)
    return 0


def cmd_report(args) -> int:
    params, Z = _source(args)
    if params is None:
        raise UsageError("report needs --d and --k")
    timing = {}

    def timed(name: str, fn: Callable):
        t0 = time.perf_counter()
        val = fn()
        timing[name] = round(time.perf_counter() - t0, 3)
        return val

    A = Z.arrangement
    shadow = timed("shadow", lambda: shadow_polygon(Z))
    section = timed("section", lambda: polar_polygon(shadow))
    counts = {
        "zones": A.m,
        "dual_vertices": len(Z.vertices),
        "dual_edges": timed("edges", lambda: len(edge_sign_vectors(Z))),
        "regions": timed("regions", lambda: len(Z.regions)),
        "section_vertices": len(section),
        "selected_vertices": len(selected_vertex_signs(params)),
    }
    counts.update(shadow_counts(params, Z))
    if params.d >= 3:
        counts["surviving_edges"] = len(surviving_edge_signs(params))
    lemmas = ["4.2", "3.3"]
    if params.d >= 3:
        lemmas += ["4.3", "walk"]
    if params.d == 3:
        lemmas.append("3.4")
    if args.trials > 0:
        lemmas.append("2.2-oracle")
    verification = {}
    for lemma in lemmas:
        verification[lemma] = timed(f"verify {lemma}", lambda: run_check(lemma, args, params, Z))
    passed = all(v["passed"] for v in verification.values())
    out = {"params": _params_json(params), "counts": counts, "verification": verification,
           "passed": passed, "timing": timing}
    _emit_json(out, args)
    return 0 if passed else 1


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="dimension (>= 2)")
    common.add_argument("--k", type=int, help="family parameter (>= 1); n = 4k + 1")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for ray enumeration")
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                        help="significant digits in SVG/OFF output")
    common.add_argument("--seed", type=int, default=7, help="seed for randomized checks")
    common.add_argument("--canonical", action="store_true",
                        help="omit timing fields so repeated runs are byte-identical")

    p = argparse.ArgumentParser(prog="zonocut", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("build", parents=[common], help="write the construction matrix as JSON")

    for name in ("shadow", "section"):
        s = sub.add_parser(name, parents=[common], help=f"{name} polygon of the construction or a matrix file")
        s.add_argument("--matrix", help="matrix JSON file instead of --d/--k")
        s.add_argument("--format", choices=("json", "svg"), default="json")
        s.add_argument("--walk", action="store_true", help="include the boundary-walk edge cycle")

    v = sub.add_parser("verify", parents=[common], help="run one verification suite")
    v.add_argument("--lemma", choices=LEMMAS, required=True)
    v.add_argument("--trials", type=int, default=20, help="random instances for 2.2-oracle")
    v.add_argument("--certs", help="directory for certificate files")

    e = sub.add_parser("export", parents=[common], help="write OFF solids or SVG polygons")
    e.add_argument("--matrix", help="matrix JSON file instead of --d/--k")
    e.add_argument("--object", choices=("zonotope", "dual", "shadow", "section"), required=True)
    e.add_argument("--format", choices=("off", "svg"), required=True)

    r = sub.add_parser("report", parents=[common], help="counts and all applicable verifications")
    r.add_argument("--trials", type=int, default=20, help="random instances for 2.2-oracle (0 skips)")
    r.add_argument("--certs", help="directory for certificate files")
    return p


COMMANDS = {
    "build": cmd_build,
    "shadow": cmd_shadow,
    "section": cmd_section,
    "verify": cmd_verify,
    "export": cmd_export,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except USAGE_ERRORS as exc:
        print(f"zonocut {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
