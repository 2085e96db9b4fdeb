import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from zonocut.arrangement import ArrangementMatrix, conforms
from zonocut.construction import EasterEggParams, easteregg_matrix, surviving_edge_signs
from zonocut.exactmath import RatMat, solve
from zonocut.projection import (
    NotInteriorError,
    ShadowAmbiguityError,
    boundary_position,
    change_basis,
    cross,
    facet_upper_bound,
    hull2,
    is_generic_shadow,
    polar_polygon,
    positively_spans,
    section_polygon,
    shadow_boundary_walk,
    shadow_polygon,
    survives,
)
from zonocut.zonotope import DualZonotope

pt = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


def brute_hull_vertices(points):
    """A point is a hull vertex iff it is not in the closed hull of the others
    (checked via every triangle and segment of the remaining points)."""
    pts = sorted({(F(a), F(b)) for a, b in points})
    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        covered = False
        for a, b in itertools.combinations(others, 2):
            if cross(a, b, p) == 0 and min(a, b) <= p <= max(a, b):
                covered = True
        for a, b, c in itertools.combinations(others, 3):
            s = [cross(a, b, p), cross(b, c, p), cross(c, a, p)]
            if cross(a, b, c) != 0 and (all(v >= 0 for v in s) or all(v <= 0 for v in s)):
                covered = True
        if not covered:
            out.add(p)
    return out


def test_hull_examples():
    tri = hull2([(0, 0), (3, 0), (0, 3), (1, 1)])
    assert len(tri) == 3
    seg = hull2([(0, 0), (1, 1), (2, 2), (3, 3)])
    assert seg.points == ((0, 0), (3, 3)) and seg.degenerate
    sq = hull2([(-1, -1), (1, -1), (1, 1), (-1, 1), (0, -1), (1, 0), (0, 1), (-1, 0)])
    assert sq.points == ((-1, -1), (1, -1), (1, 1), (-1, 1))


@settings(max_examples=200, deadline=None)
@given(st.lists(pt, min_size=1, max_size=9))
def test_hull_matches_brute_force(points):
    P = hull2(points)
    if not P.degenerate:
        assert set(P.points) == brute_hull_vertices(points)
        assert all(cross(a, b, c) > 0 for a, b, c in
                   zip(P.points, P.points[1:] + P.points[:1], P.points[2:] + P.points[:2]))
    assert P.points[0] == min(P.points)


def test_boundary_position():
    sq = hull2([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert boundary_position(sq, (1, 1)) == "vertex"
    assert boundary_position(sq, (1, 0)) == "edge"
    assert boundary_position(sq, (0, 0)) == "inside"
    assert boundary_position(sq, (2, 0)) == "outside"


def test_polar_of_square_is_diamond():
    sq = hull2([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert set(polar_polygon(sq).points) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert polar_polygon(polar_polygon(sq)) == sq


def test_polar_needs_interior_origin():
    with pytest.raises(NotInteriorError):
        polar_polygon(hull2([(1, 1), (2, 1), (1, 2)]))
    with pytest.raises(NotInteriorError):
        polar_polygon(hull2([(0, 0), (1, 0), (0, 1)]))
    with pytest.raises(NotInteriorError):
        polar_polygon(hull2([(-1, 0), (1, 0)]))


@settings(max_examples=100, deadline=None)
@given(st.lists(pt.filter(lambda p: p != (0, 0)), min_size=2, max_size=6))
def test_polar_involution_on_symmetric_polygons(points):
    P = hull2(points + [(-a, -b) for a, b in points])
    if P.degenerate or boundary_position(P, (0, 0)) != "inside":
        return
    Q = polar_polygon(P)
    assert len(Q) == len(P)
    assert polar_polygon(Q) == P


def test_facet_upper_bound():
    assert facet_upper_bound(10, 3) == 90
    assert facet_upper_bound(5, 2) == 10
    assert facet_upper_bound(15, 4) == 910


def test_positively_spans_examples():
    assert positively_spans(RatMat([[1], [-1]]))[0]
    assert not positively_spans(RatMat([[1, 0], [0, 1]]))[0]
    # a positive dependency without full rank does not span
    assert not positively_spans(RatMat([[1, 0], [-1, 0]]))[0]


def test_survives_validates_k(Z3):
    s = Z3.vertices[0][1]
    with pytest.raises(ValueError):
        survives(Z3, s, 0)
    with pytest.raises(ValueError):
        survives(Z3, s, 3)


def test_surviving_edges_survive(Z3):
    for e in surviving_edge_signs(EasterEggParams(3, 1)):
        ok, cert = survives(Z3, e, 2)
        assert ok and cert.rank == 1
        lam = cert.positive_combination
        assert min(lam) >= 1 and cert.truncated_normals.left_apply(lam) == (0,)


def test_shadow_counts(Z2, Z3, Z4):
    assert len(shadow_polygon(Z2)) == 10
    assert len(shadow_polygon(Z3)) == 60
    assert len(shadow_polygon(Z4)) == 300


@pytest.mark.parametrize("Zname", ["Z2", "Z3", "Z4"])
def test_shadow_symmetric_and_bounded(request, Zname):
    Z = request.getfixturevalue(Zname)
    P = shadow_polygon(Z)
    pts = set(P.points)
    assert all((-a, -b) in pts for a, b in pts)
    assert len(P) <= facet_upper_bound(Z.arrangement.m, Z.d)


def _zonotope_scale(A, v):
    """Largest s with s*v in sum [-a_j, a_j], by floating-point LP."""
    M = np.array([[float(x) for x in r] for r in A.A]).T  # d x m
    m = M.shape[1]
    c = np.zeros(m + 1)
    c[-1] = -1
    A_eq = np.hstack([M, -np.array([[float(x)] for x in v])])
    res = linprog(c, A_eq=A_eq, b_eq=np.zeros(len(v)), bounds=[(-1, 1)] * m + [(0, None)], method="highs")
    assert res.status == 0
    return res.x[-1]


@pytest.mark.parametrize("d", [2, 3])
def test_section_lies_on_zonotope_boundary(d):
    A = easteregg_matrix(EasterEggParams(d, 1))
    S = section_polygon(A)
    for v in S.points:
        lifted = tuple(v) + (F(0),) * (d - 2)
        assert _zonotope_scale(A, lifted) == pytest.approx(1, rel=1e-9)
    for a, b in S.edges():
        mid = tuple((x + y) / 2 for x, y in zip(a, b)) + (F(0),) * (d - 2)
        assert _zonotope_scale(A, mid) == pytest.approx(1, rel=1e-9)


def test_section_matches_shadow(Z2, Z3, Z4):
    for Z in (Z2, Z3, Z4):
        P = shadow_polygon(Z)
        assert len(section_polygon(Z)) == len(P)
        assert polar_polygon(section_polygon(Z)) == P


def test_change_basis_maps_dual_vertices(egg3, Z3):
    T = RatMat([[1, 2, 0], [0, 1, 0], [1, 0, 1]])
    B = change_basis(egg3, T)
    new = {x for x, _ in DualZonotope(B).vertices}
    mapped = {solve(T, x) for x, _ in Z3.vertices}
    assert new == mapped
    with pytest.raises(ValueError):
        change_basis(egg3, RatMat([[1, 0, 0], [0, 1, 0], [1, 1, 0]]))


def test_boundary_walk(Z3, Z4):
    for d, Z in ((3, Z3), (4, Z4)):
        cycle = shadow_boundary_walk(Z)
        S = set(surviving_edge_signs(EasterEggParams(d, 1)))
        assert set(cycle) == S and len(cycle) == len(S) == len(shadow_polygon(Z))
        vsigns = [s for _, s in Z.vertices]
        for e, f in zip(cycle, cycle[1:] + cycle[:1]):
            assert any(conforms(v, e) and conforms(v, f) for v in vsigns)


def test_boundary_walk_rejects_facet_projecting_to_edge():
    # the facet with normal (2, 2, 0) is parallel to the projection direction
    Z = DualZonotope(ArrangementMatrix.from_rows([[1, 1, 0], [1, -1, 0], [0, 1, 1], [0, 1, -1]]))
    assert not is_generic_shadow(Z)
    with pytest.raises(ShadowAmbiguityError):
        shadow_boundary_walk(Z)


def test_interior_collision_is_nongeneric_but_walkable():
    # the vertices +-(0, 0, 1) both project to the origin, inside the shadow
    Z = DualZonotope(ArrangementMatrix.from_rows([[1, 1, 0], [1, -1, 0], [0, 0, 1]]))
    assert not is_generic_shadow(Z)
    assert len(shadow_boundary_walk(Z)) == len(shadow_polygon(Z)) == 4


def test_boundary_walk_needs_d3(Z2):
    with pytest.raises(ValueError):
        shadow_boundary_walk(Z2)
