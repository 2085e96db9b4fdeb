import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import brute_force_regions, lp_realizable
from zonocut.arrangement import (
    ArrangementError,
    ArrangementMatrix,
    AtInfinityError,
    dehomogenize,
    enumerate_affine_vertices,
    enumerate_rays,
    format_signs,
    homogenize,
    negate,
    parse_signs,
    realizable,
    region_sign_vectors,
    sign_map,
    zeros,
)
from zonocut.construction import EasterEggParams, selected_vertex_signs
from zonocut.exactmath import rank


def test_validation_rejects_bad_matrices():
    with pytest.raises(ArrangementError, match="rank"):
        ArrangementMatrix.from_rows([[1, 1, 0], [2, 2, 0], [0, 1, 0]])
    with pytest.raises(ArrangementError, match="first unit vector"):
        ArrangementMatrix.from_rows([[3, 0], [0, 1]])
    with pytest.raises(ArrangementError, match="parallel"):
        ArrangementMatrix.from_rows([[1, 1], [-2, -2], [0, 1]])


def test_sign_string_round_trip():
    s = (1, 0, -1, 1)
    assert format_signs(s) == "+0-+"
    assert parse_signs("+0-+") == s
    assert negate(s) == (-1, 0, 1, -1)


def test_sign_map_examples(egg2):
    assert sign_map(egg2, (0, 0)) == (0,) * 5
    assert sign_map(egg2, (1, 2)) == (1, 1, 1, -1, -1)
    with pytest.raises(ValueError):
        sign_map(egg2, (1, 2, 3))


@given(st.lists(st.integers(-50, 50), min_size=3, max_size=3))
def test_sign_map_antipodal(egg3, x):
    assert sign_map(egg3, [-v for v in x]) == negate(sign_map(egg3, x))


def test_homogeneous_coordinates():
    assert homogenize((2, 3)) == (1, 2, 3)
    assert dehomogenize((2, 4, 6)) == (2, 3)
    with pytest.raises(AtInfinityError):
        dehomogenize((0, 1, 0))


def test_rays_of_two_lines(cross2):
    rays = enumerate_rays(cross2)
    assert {r.direction for r in rays} == {(1, -1), (-1, 1), (1, 1), (-1, -1)}


def test_rays_of_line_family(egg2):
    rays = enumerate_rays(egg2)
    assert len(rays) == 10
    assert all(r.direction[0] != 0 for r in rays)


def test_ray_invariants(egg3):
    rays = enumerate_rays(egg3)
    for r in rays:
        assert sign_map(egg3, r.direction) == r.sign
        assert zeros(r.sign) == r.incident_rows
        assert rank(egg3.A.select_rows(sorted(r.incident_rows))) == 2
        lead = next(v for v in r.direction if v != 0)
        assert abs(lead) == 1
    dirs = {r.direction for r in rays}
    assert all(tuple(-v for v in d) in dirs for d in dirs)
    at_infinity = sum(1 for r in rays if r.direction[0] == 0)
    assert len(rays) == 2 * len(enumerate_affine_vertices(egg3, rays)) + at_infinity


def test_parallel_enumeration_matches_serial(egg3):
    assert enumerate_rays(egg3, jobs=2) == enumerate_rays(egg3)


def test_affine_vertices_of_line_family(egg2):
    vs = enumerate_affine_vertices(egg2)
    assert [v.coords for v in vs] == [(-1,), (F(-1, 2),), (0,), (F(1, 2),), (1,)]
    assert all(v.generic for v in vs)


def test_affine_vertices_contain_selected(egg3):
    signs = {v.sign: v for v in enumerate_affine_vertices(egg3)}
    for s in selected_vertex_signs(EasterEggParams(3, 1)):
        assert s in signs and signs[s].generic


def test_concurrent_hyperplanes_merge_into_one_vertex():
    # three lines through the affine origin plus one generic line
    A = ArrangementMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]])
    vs = enumerate_affine_vertices(A)
    origin = [v for v in vs if v.coords == (0, 0)]
    assert len(origin) == 1
    assert origin[0].incident_rows == frozenset({0, 1, 2})
    assert not origin[0].generic


def test_realizable_examples(cross2, egg3):
    assert realizable(cross2, (0, 0))
    assert realizable(cross2, (1, 1))
    A = ArrangementMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]])
    # x1 > 0, x2 > 0 forces x1 + x2 > 0
    assert not realizable(A, (1, 1, -1, 1))
    for s in selected_vertex_signs(EasterEggParams(3, 1)):
        assert realizable(egg3, s)


def test_regions_of_two_lines(cross2):
    assert set(region_sign_vectors(cross2)) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_regions_of_line_family_match_brute_force(egg2):
    regions = set(region_sign_vectors(egg2))
    assert regions == brute_force_regions([list(r) for r in egg2.A])
    # five lines through the origin of the plane cut it into ten sectors
    assert len(regions) == 10


def _random_instance(seed, d=3, m=5):
    rng = random.Random(seed)
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(m)]
        try:
            return ArrangementMatrix.from_rows(rows)
        except ArrangementError:
            continue


@pytest.mark.parametrize("seed", range(6))
def test_regions_match_brute_force_on_random_instances(seed):
    A = _random_instance(seed)
    rows = [list(r) for r in A.A]
    regions = set(region_sign_vectors(A))
    assert regions == brute_force_regions(rows)
    assert all(negate(s) in regions for s in regions)
    assert all(0 not in s for s in regions)


@pytest.mark.parametrize("seed", range(4))
def test_realizable_matches_lp_oracle_on_mixed_signs(seed):
    A = _random_instance(100 + seed, m=4)
    rows = [list(r) for r in A.A]
    rng = random.Random(seed)
    for _ in range(25):
        s = tuple(rng.choice((1, 0, -1)) for _ in rows)
        assert realizable(A, s) == lp_realizable(rows, s)


def test_easter_egg_vertices_are_generic():
    for d in (3, 4):
        from zonocut.construction import easteregg_matrix
        vs = enumerate_affine_vertices(easteregg_matrix(EasterEggParams(d, 1)))
        selected = set(selected_vertex_signs(EasterEggParams(d, 1)))
        assert all(v.generic for v in vs if v.sign in selected)
