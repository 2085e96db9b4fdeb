"""Machine checks of the construction's claims, each returning a JSON-ready report.

A report is a dict with at least ``passed`` (bool) and ``checked`` (int);
on failure ``counterexample`` holds the first offending object.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from .arrangement import (
    ArrangementError,
    ArrangementMatrix,
    conforms,
    enumerate_affine_vertices,
    format_signs,
    homogenize,
    realizable,
    realizable_refinements,
    sign_map,
)
from .construction import (
    EasterEggParams,
    FacetSpec,
    affine_equivalence,
    cs_shadow_projection,
    easteregg_matrix,
    embed_facet,
    largest_facet,
    polytope_vertices,
    predicted_shadow_vertices,
    project_points,
    selected_vertex_signs,
    slice_at_x0_one,
    surviving_edge_signs,
    symmetric_facet_projection,
    vertex_on_hyperplanes,
)
from .exactmath import RatMat, rank, sign
from .projection import (
    facet_upper_bound,
    is_generic_shadow,
    shadow_boundary_walk,
    shadow_polygon,
    survives,
    vertex_survival_oracle,
)
from .serialize import matrix_json, vec_json
from .zonotope import DualZonotope, face_dimension


def _report(name: str, checked: int, failure: Optional[dict], **details) -> dict:
    out = {"check": name, "passed": failure is None, "checked": checked}
    if failure is not None:
        out["counterexample"] = failure
    out.update(details)
    return out


def check_selected_vertices(params: EasterEggParams, Z: Optional[DualZonotope] = None) -> dict:
    """Selected sign patterns <-> generic arrangement vertices, with the coordinate bound."""
    A = easteregg_matrix(params)
    d, n, alpha = params.d, params.n, params.alpha
    selected = set(selected_vertex_signs(params))
    verts = {v.sign: v for v in enumerate_affine_vertices(A, Z.rays if Z is not None else None)}
    failure = None
    checked = 0
    for sigma in sorted(selected, reverse=True):
        checked += 1
        rows = [j for j, s in enumerate(sigma) if s == 0]
        v = vertex_on_hyperplanes(A, rows) if len(rows) == d - 1 else None
        problem = None
        if len(rows) != d - 1:
            problem = "pattern does not have one zero per block"
        elif not realizable(A, sigma):
            problem = "not realizable"
        elif v is None:
            problem = "hyperplanes do not meet in a point"
        elif sign_map(A, homogenize(v)) != sigma:
            problem = "vertex has a different sign vector"
        elif sigma not in verts or not verts[sigma].generic:
            problem = "not a generic vertex of the arrangement"
        else:
            for i in range(1, d - 1):
                if not abs(v[i]) < alpha ** (i - 1) / 4:
                    problem = f"coordinate bound fails for x_{i + 1}"
                    break
        if problem:
            failure = {"sign": format_signs(sigma), "problem": problem}
            break

    # converse: one hyperplane per block always lands on a selected pattern
    converse = 0
    if failure is None:
        for choice in itertools.product(range(n), repeat=d - 1):
            rows = [(i * n) + c for i, c in enumerate(choice)]
            v = vertex_on_hyperplanes(A, rows)
            converse += 1
            if v is None or sign_map(A, homogenize(v)) not in selected:
                failure = {"rows": rows, "problem": "hyperplane choice misses the selected patterns"}
                break
    if failure is None and len(selected) != n ** (d - 1):
        failure = {"problem": f"{len(selected)} selected patterns, expected {n ** (d - 1)}"}
    others = [v for s, v in verts.items() if s not in selected]
    return _report(
        "selected-vertices", checked, failure,
        expected=n ** (d - 1), selected=len(selected), converse_checked=converse,
        other_vertices=len(others), other_generic=sum(v.generic for v in others),
    )


def _zero_positions(sigma, params):
    """Row index of the zero in each of the blocks 1..d-2."""
    return [next(j for j in params.block_rows(i) if sigma[j] == 0) for i in range(1, params.d - 1)]


def check_surviving_edges(params: EasterEggParams, Z: Optional[DualZonotope] = None) -> dict:
    """Every member of the edge family is an edge, survives, and has the forced normal signs."""
    A = easteregg_matrix(params)
    Z = Z or DualZonotope(A)
    d, n, alpha = params.d, params.n, params.alpha
    S = surviving_edge_signs(params)
    expected = 2 * n ** (d - 2) * (n + 1)
    failure = None
    normals_checked = 0
    for sigma in S:
        problem = None
        if face_dimension(Z, sigma) != 1:
            problem = "not an edge"
        elif not survives(Z, sigma, 2)[0]:
            problem = "fails the positive-span test"
        if problem is None:
            zpos = _zero_positions(sigma, params)
            for tau in realizable_refinements(A, sigma):
                a = A.combine(tau)
                normals_checked += 1
                for i in range(2, d):
                    forced = tau[zpos[i - 2]]
                    if sign(a[i]) != forced or abs(a[i]) < alpha ** (i - 1):
                        problem = f"normal coordinate {i} violates the forced sign/magnitude"
                        break
                if problem:
                    break
        if problem:
            failure = {"sign": format_signs(sigma), "problem": problem}
            break
    if failure is None and (len(S) != expected or len(set(S)) != len(S)):
        failure = {"problem": f"{len(set(S))} distinct edge patterns, expected {expected}"}
    return _report("surviving-edges", len(S), failure, expected=expected,
                   normals_checked=normals_checked)


def check_boundary_walk(params: EasterEggParams, Z: Optional[DualZonotope] = None) -> dict:
    A = easteregg_matrix(params)
    Z = Z or DualZonotope(A)
    cycle = shadow_boundary_walk(Z)
    S = set(surviving_edge_signs(params))
    shadow = shadow_polygon(Z)
    signs = [s for _, s in Z.vertices]
    linked = all(
        any(conforms(v, cycle[i]) and conforms(v, cycle[(i + 1) % len(cycle)]) for v in signs)
        for i in range(len(cycle))
    )
    failure = None
    if set(cycle) != S:
        failure = {"problem": "cycle edge set differs from the surviving family",
                   "missing": len(S - set(cycle)), "extra": len(set(cycle) - S)}
    elif len(cycle) != len(shadow) or len(set(cycle)) != len(cycle):
        failure = {"problem": "cycle length differs from the shadow vertex count"}
    elif not linked:
        failure = {"problem": "consecutive edges do not share a vertex"}
    return _report("boundary-walk", len(cycle), failure, cycle_length=len(cycle),
                   shadow_vertices=len(shadow))


def random_generic_instance(rng: random.Random, d: int = 3, max_m: int = 6, lo: int = -5, hi: int = 5,
                            max_tries: int = 1000) -> tuple[ArrangementMatrix, int]:
    """Draw integer matrices until one is valid and has a generic shadow; returns (A, rejected)."""
    rejected = 0
    for _ in range(max_tries):
        m = rng.randint(d, max_m)
        rows = [[rng.randint(lo, hi) for _ in range(d)] for _ in range(m)]
        try:
            A = ArrangementMatrix(RatMat(rows, ncols=d))
        except ArrangementError:
            rejected += 1
            continue
        if not is_generic_shadow(DualZonotope(A)):
            rejected += 1
            continue
        return A, rejected
    raise RuntimeError("no generic instance found")


def check_survival_oracle(trials: int = 20, seed: int = 7) -> dict:
    """Positive-span test vs. hull membership of projected vertices on random instances."""
    rng = random.Random(seed)
    failure = None
    vertices = rejected = 0
    for t in range(trials):
        A, rej = random_generic_instance(rng)
        rejected += rej
        Z = DualZonotope(A)
        for sigma, span_ok, on_hull in vertex_survival_oracle(Z):
            vertices += 1
            if span_ok != on_hull:
                failure = {"trial": t, "matrix": matrix_json(A), "sign": format_signs(sigma),
                           "positive_span": span_ok, "hull_vertex": on_hull}
                break
        if failure:
            break
    return _report("survival-oracle", vertices, failure, trials=trials, seed=seed,
                   rejected_draws=rejected)


def square() -> FacetSpec:
    return FacetSpec(RatMat([[1, 0], [-1, 0], [0, 1], [0, -1]]), (1, 1, 1, 1))


def hexagon() -> FacetSpec:
    """Affinely regular hexagon with vertices (1,0), (1,1), (0,1), (-1,0), (-1,-1), (0,-1)."""
    return FacetSpec(RatMat([[1, 0], [0, 1], [-1, 0], [0, -1], [1, -1], [-1, 1]]), (1,) * 6)


def check_facet_embedding(polytopes: Optional[dict] = None) -> dict:
    polytopes = polytopes or {"square": square(), "hexagon": hexagon()}
    results = {}
    failure = None
    for name, F in polytopes.items():
        A = embed_facet(F)
        Z = DualZonotope(A)
        e0 = (Fraction(1),) + (Fraction(0),) * F.dim
        sums = tuple(sum(col, Fraction(0)) for col in zip(*A.A))
        target = polytope_vertices(F)
        sl = slice_at_x0_one(Z)
        amap = affine_equivalence(sl, target)
        results[name] = {
            "matrix": matrix_json(A),
            "rows_sum_to_e0": sums == e0,
            "polytope_vertices": len(target),
            "slice_vertices": len(sl),
            "affine_map": None if amap is None else {"linear": [vec_json(r) for r in amap[0]],
                                                     "shift": vec_json(amap[1])},
        }
        if failure is None and (sums != e0 or amap is None or len(sl) != len(target)):
            failure = {"polytope": name, **results[name]}
    return _report("facet-embedding", len(polytopes), failure, results=results)


def square_prism_vertices(h: int = 2) -> list:
    return [tuple(Fraction(c) for c in (x, y, z)) for x in (-1, 1) for y in (-1, 1) for z in (-h, h)]


def check_facet_projection(params: EasterEggParams = EasterEggParams(3, 1), seed: int = 0) -> dict:
    Z = DualZonotope(easteregg_matrix(params))
    sigma, size = largest_facet(Z)
    P = cs_shadow_projection(Z, sigma, seed=seed)
    image = project_points(P, [x for x, _ in Z.vertices])
    prism = square_prism_vertices()
    Pp = symmetric_facet_projection(prism, 4, (0, 0, 1), seed=seed)
    prism_image = project_points(Pp, prism)
    failure = None
    if len(image) < size or rank(P) != 2:
        failure = {"object": "dual zonotope", "facet": format_signs(sigma), "facet_vertices": size,
                   "image_vertices": len(image)}
    elif len(prism_image) < 4 or rank(Pp) != 2:
        failure = {"object": "square prism", "image_vertices": len(prism_image)}
    return _report("facet-projection", 2, failure, facet=format_signs(sigma), facet_vertices=size,
                   image_vertices=len(image), projection=[vec_json(r) for r in P],
                   prism_image_vertices=len(prism_image))


def shadow_counts(params: EasterEggParams, Z: Optional[DualZonotope] = None) -> dict:
    Z = Z or DualZonotope(easteregg_matrix(params))
    count = len(shadow_polygon(Z))
    predicted = predicted_shadow_vertices(params.d, params.n)
    bound = facet_upper_bound(params.m, params.d)
    out = {"shadow_vertices": count, "predicted": predicted, "upper_bound": bound,
           "at_least_predicted": count >= predicted, "within_bound": count <= bound}
    if params.d == 2:
        out["note"] = (f"d=2: the formula 2n^(d-1)+2n^(d-2) gives {predicted}, but the dual is a "
                       f"{2 * params.n}-gon; the formula value is not asserted for d=2")
        out["at_least_predicted"] = None
    return out
