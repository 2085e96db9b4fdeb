import json
from fractions import Fraction as F

import pytest

from zonocut.arrangement import conforms
from zonocut.construction import EasterEggParams, easteregg_matrix
from zonocut.projection import hull2
from zonocut.serialize import (
    decimal_str,
    dumps,
    matrix_from_json,
    matrix_json,
    off_text,
    parse_rat,
    polygon_json,
    polygon_svg,
    rat_str,
    strip_timing,
)


def test_rationals_round_trip():
    assert rat_str(F(3)) == "3/1"
    assert rat_str(F(-2, 6)) == "-1/3"
    assert parse_rat("-1/3") == F(-1, 3)
    with pytest.raises(TypeError):
        parse_rat(0.5)


def test_matrix_round_trip():
    A = easteregg_matrix(EasterEggParams(3, 1))
    obj = json.loads(dumps(matrix_json(A)))
    assert obj["rows"] == 10 and obj["cols"] == 3
    assert all(isinstance(x, str) for row in obj["entries"] for x in row)
    assert matrix_from_json(obj) == A
    obj["rows"] = 11
    with pytest.raises(ValueError):
        matrix_from_json(obj)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")
    assert strip_timing({"a": {"timing": 1, "x": 2}, "timing": 3}) == {"a": {"x": 2}}


def test_polygon_json():
    P = hull2([(0, 0), (1, 0), (0, F(1, 2))])
    assert polygon_json(P) == {"count": 3, "vertices": [["0/1", "0/1"], ["1/1", "0/1"], ["0/1", "1/2"]]}


def test_decimal_str():
    assert decimal_str(F(1, 3), 5) == "0.33333"
    assert decimal_str(F(0)) == "0"
    assert decimal_str(F(5, 2)) == "2.5"
    assert decimal_str(F(-1, 8)) == "-0.125"


def _exact_cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def test_off_faces_are_outward_and_closed(Z3):
    A = Z3.arrangement
    points = [x for x, _ in Z3.vertices]
    signs = [s for _, s in Z3.vertices]
    faces = [([i for i, s in enumerate(signs) if conforms(s, r)], A.combine(r)) for r in Z3.regions]
    text = off_text(points, faces)
    lines = text.splitlines()
    assert lines[0] == "OFF"
    nv, nf, _ = map(int, lines[1].split())
    assert (nv, nf) == (68, 78)
    edges = {}
    for line, (_, normal) in zip(lines[2 + nv:], faces):
        idx = list(map(int, line.split()))[1:]
        p0, p1, p2 = (points[i] for i in idx[:3])
        n = _exact_cross([a - b for a, b in zip(p1, p0)], [a - b for a, b in zip(p2, p0)])
        assert sum(a * b for a, b in zip(n, normal)) > 0
        for a, b in zip(idx, idx[1:] + idx[:1]):
            edges[(a, b)] = edges.get((a, b), 0) + 1
    # a closed oriented surface uses each directed edge once and its reverse once
    assert all(v == 1 and edges.get((b, a)) == 1 for (a, b), v in edges.items())
    assert nv - len(edges) // 2 + nf == 2


def test_svg_viewbox_has_margin():
    P = hull2([(0, 0), (1, 0), (1, 1), (0, 1)])
    svg = polygon_svg(P, digits=6)
    box = svg.split('viewBox="')[1].split('"')[0]
    assert list(map(float, box.split())) == [-0.05, -1.05, 1.1, 1.1]
    assert svg.count("<polygon") == 1
    with pytest.raises(ValueError):
        polygon_svg(hull2([]))
