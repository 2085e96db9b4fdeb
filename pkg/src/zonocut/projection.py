"""2D shadows of dual zonotopes, central cuts of zonotopes, and face survival.

The shadow is always the projection onto ``(x_0, x_1)``.  Other planes are
reached by :func:`change_basis` on the matrix before building the dual.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Tuple

from .arrangement import ArrangementMatrix, SignVector, conforms, sign_map
from .exactmath import RatMat, RatVec, feasible_strictly_positive_combination, rank
from .zonotope import DualZonotope, face_dimension, normals_matrix, support_eval

Point2 = Tuple[Fraction, Fraction]


class NotInteriorError(ValueError):
    pass


class ShadowAmbiguityError(ValueError):
    """The shadow is not in general position, so its boundary is not a cycle of edges."""


def cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Polygon2:
    """Convex polygon, vertices counterclockwise starting at the lexicographic minimum.

    Fewer than three points means a degenerate hull (segment or point).
    """

    points: Tuple[Point2, ...]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def degenerate(self) -> bool:
        return len(self.points) < 3

    def edges(self):
        pts = self.points
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]


def _rotate_to_min(points: Sequence[Point2]) -> Tuple[Point2, ...]:
    if not points:
        return ()
    i = min(range(len(points)), key=lambda j: points[j])
    return tuple(points[i:]) + tuple(points[:i])


def hull2(points: Sequence[Sequence]) -> Polygon2:
    """Exact convex hull by Andrew's monotone chain; collinear points are dropped."""
    pts = sorted({(Fraction(p[0]), Fraction(p[1])) for p in points})
    if len(pts) <= 2:
        return Polygon2(tuple(pts))

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return Polygon2(_rotate_to_min(hull))


def boundary_position(P: Polygon2, q: Point2) -> str:
    """Classify ``q`` against P: 'vertex', 'edge' (relative interior), 'inside' or 'outside'."""
    if q in P.points:
        return "vertex"
    if P.degenerate:
        if len(P) == 2 and cross(P.points[0], P.points[1], q) == 0:
            lo, hi = P.points
            if min(lo, hi) < q < max(lo, hi):
                return "edge"
        return "outside"
    on_edge = False
    for a, b in P.edges():
        c = cross(a, b, q)
        if c < 0:
            return "outside"
        if c == 0:
            on_edge = True
    return "edge" if on_edge else "inside"


def polar_polygon(P: Polygon2) -> Polygon2:
    """Polar dual: the edge ``{x : a x = 1}`` becomes the vertex ``a``."""
    if P.degenerate:
        raise NotInteriorError("polar of a degenerate polygon is unbounded")
    origin = (Fraction(0), Fraction(0))
    out = []
    for p, q in P.edges():
        det = p[0] * q[1] - p[1] * q[0]
        if det <= 0 or cross(p, q, origin) <= 0:
            raise NotInteriorError("origin is not strictly inside the polygon")
        out.append(((q[1] - p[1]) / det, (p[0] - q[0]) / det))
    return Polygon2(_rotate_to_min(out))


def project2(x: Sequence[Fraction]) -> Point2:
    return (x[0], x[1])


def shadow_polygon(Z: DualZonotope) -> Polygon2:
    return hull2([project2(x) for x, _ in Z.vertices])


def section_polygon(A: ArrangementMatrix | DualZonotope) -> Polygon2:
    """Central 2D-cut of the zonotope with the plane spanned by the first two
    coordinate (row-)vectors, as the polar of the shadow of its dual."""
    Z = A if isinstance(A, DualZonotope) else DualZonotope(A)
    return polar_polygon(shadow_polygon(Z))


def change_basis(A: ArrangementMatrix, T: RatMat) -> ArrangementMatrix:
    """The arrangement ``A T``; its dual zonotope is ``T^{-1} Z*_A``.

    Projecting the new dual onto its first two coordinates realises the
    projection of ``Z*_A`` along the first two rows of ``T^{-1}``.
    """
    if T.shape != (A.d, A.d) or rank(T) != A.d:
        raise ValueError("change of basis must be an invertible d x d matrix")
    return ArrangementMatrix(A.A @ T)


def facet_upper_bound(m: int, d: int) -> int:
    if not m >= d >= 2:
        raise ValueError(f"need m >= d >= 2, got m={m}, d={d}")
    return 2 * comb(m, d - 1)


@dataclass(frozen=True)
class SurvivalCertificate:
    face_sign: SignVector
    truncated_normals: RatMat
    positive_combination: Optional[RatVec]
    rank: int


def positively_spans(rows: RatMat) -> Tuple[bool, int, Optional[RatVec]]:
    """Whether the rows positively span R^ncols: full rank plus a strictly positive dependency."""
    r = rank(rows)
    lam = feasible_strictly_positive_combination(rows)
    return (r == rows.ncols and lam is not None), r, lam


def survives(Z: DualZonotope, sigma: Sequence[int], k: int,
             witness: Sequence | None = None) -> Tuple[bool, SurvivalCertificate]:
    """Sufficient test for the face ``sigma`` to survive projection to the first k coordinates."""
    d = Z.d
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d = {d}, got k = {k}")
    N = normals_matrix(Z, sigma, witness)
    truncated = RatMat((row[k:] for row in N), ncols=d - k)
    ok, r, lam = positively_spans(truncated)
    return ok, SurvivalCertificate(tuple(sigma), truncated, lam, r)


def projection_preimages(Z: DualZonotope) -> dict:
    """Map each projected point to the dual vertices above it."""
    pre = defaultdict(list)
    for x, s in Z.vertices:
        pre[project2(x)].append((x, s))
    return pre


def is_generic_shadow(Z: DualZonotope) -> bool:
    """General position of the shadow.

    Requires that distinct dual vertices have distinct projections and that
    no projected vertex lies in the relative interior of a shadow edge (which
    is what a 2-face or a collinear chain projecting onto an edge produces).
    """
    pre = projection_preimages(Z)
    if any(len(v) > 1 for v in pre.values()):
        return False
    P = hull2(list(pre))
    return not any(boundary_position(P, q) == "edge" for q in pre)


def _canonical_cycle(cycle: Sequence[SignVector]) -> Tuple[SignVector, ...]:
    i = min(range(len(cycle)), key=lambda j: cycle[j])
    return tuple(cycle[i:]) + tuple(cycle[:i])


def shadow_boundary_walk(Z: DualZonotope) -> Tuple[SignVector, ...]:
    """Edge sign vectors of Z* whose projections form the shadow boundary, in cyclic order."""
    if Z.d < 3:
        raise ValueError("the boundary walk needs d >= 3")
    A = Z.arrangement
    pre = projection_preimages(Z)
    P = hull2(list(pre))
    if P.degenerate:
        raise ShadowAmbiguityError("shadow is not full-dimensional")
    for q in pre:
        if boundary_position(P, q) == "edge":
            raise ShadowAmbiguityError(f"projected vertex {q} lies inside a shadow edge")
    lifted = []
    for q in P.points:
        if len(pre[q]) != 1:
            raise ShadowAmbiguityError(f"{len(pre[q])} dual vertices project to the shadow vertex {q}")
        lifted.append(pre[q][0])

    cycle = []
    for i, (u, su) in enumerate(lifted):
        w, sw = lifted[(i + 1) % len(lifted)]
        mid = tuple(a + b for a, b in zip(u, w))
        if support_eval(A, mid) != 2:
            raise ShadowAmbiguityError("consecutive shadow vertices do not share a face")
        se = sign_map(A, mid)
        if face_dimension(Z, se, witness=mid) != 1 or not (conforms(su, se) and conforms(sw, se)):
            raise ShadowAmbiguityError("shadow edge is not the image of an edge of Z*")
        cycle.append(se)
    return _canonical_cycle(cycle)


def vertex_survival_oracle(Z: DualZonotope) -> list[Tuple[SignVector, bool, bool]]:
    """For each dual vertex: (sign, passes the positive-span test for k=2, is a shadow vertex)."""
    P = shadow_polygon(Z)
    hull_pts = set(P.points)
    return [(s, survives(Z, s, 2, witness=x)[0], project2(x) in hull_pts) for x, s in Z.vertices]
