"""File formats: JSON with exact ``"p/q"`` rationals, OFF solids, SVG polygons.

Decimal rounding happens only in the OFF and SVG writers.
"""

from __future__ import annotations

import json
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .arrangement import ArrangementMatrix, format_signs, parse_signs
from .exactmath import RatMat, RatVec, kernel_basis
from .projection import Polygon2, hull2

DEFAULT_DIGITS = 17


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(text: str) -> Fraction:
    if not isinstance(text, str):
        raise TypeError(f"expected a 'p/q' string, got {type(text).__name__}")
    return Fraction(text)


def vec_json(v: Iterable[Fraction]) -> list[str]:
    return [rat_str(x) for x in v]


def matrix_json(A: ArrangementMatrix | RatMat, **extra: Any) -> dict:
    M = A.A if isinstance(A, ArrangementMatrix) else A
    out = {"rows": M.nrows, "cols": M.ncols, "entries": [vec_json(r) for r in M]}
    out.update(extra)
    return out


def matrix_from_json(obj: dict) -> ArrangementMatrix:
    entries = [[parse_rat(x) for x in row] for row in obj["entries"]]
    M = RatMat(entries, ncols=obj.get("cols"))
    if "rows" in obj and obj["rows"] != M.nrows:
        raise ValueError(f"matrix file claims {obj['rows']} rows but lists {M.nrows}")
    return ArrangementMatrix(M)


def load_matrix(path: str | Path) -> ArrangementMatrix:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


def signs_json(sigmas: Iterable[Sequence[int]]) -> list[str]:
    return [format_signs(s) for s in sigmas]


def signs_from_json(items: Iterable[str]) -> list[tuple]:
    return [parse_signs(s) for s in items]


def polygon_json(P: Polygon2) -> dict:
    return {"count": len(P), "vertices": [vec_json(p) for p in P.points]}


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def strip_timing(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "timing"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def decimal_str(x: Fraction, digits: int = DEFAULT_DIGITS) -> str:
    ctx = Context(prec=digits)
    d = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    if d == 0:
        return "0"
    text = format(d, "f") if -30 < d.adjusted() < 30 else format(d, "e")
    if "." in text and "e" not in text:
        text = text.rstrip("0").rstrip(".")
    return text


# --------------------------------------------------------------------------
# OFF
# --------------------------------------------------------------------------

def _orient_face(points: Sequence[RatVec], idx: Sequence[int], normal: RatVec) -> list[int]:
    """Order the vertices of a planar 3D face counterclockwise as seen from ``normal``."""
    u, v = kernel_basis(RatMat([normal], ncols=3))
    det = (u[1] * v[2] - u[2] * v[1]) * normal[0] - (u[0] * v[2] - u[2] * v[0]) * normal[1] \
        + (u[0] * v[1] - u[1] * v[0]) * normal[2]
    if det < 0:
        u, v = v, u
    coords = {}
    for i in idx:
        p = points[i]
        coords[(sum(a * b for a, b in zip(u, p)), sum(a * b for a, b in zip(v, p)))] = i
    ring = hull2(list(coords))
    if len(ring) != len(idx):
        raise ValueError("face vertices are not in convex position")
    return [coords[q] for q in ring.points]


def off_text(points: Sequence[RatVec], faces: Sequence[tuple[Sequence[int], RatVec]],
             digits: int = DEFAULT_DIGITS) -> str:
    """OFF file for a 3-polytope; each face is (vertex indices, outer normal)."""
    lines = ["OFF", f"{len(points)} {len(faces)} 0"]
    for p in points:
        lines.append(" ".join(decimal_str(x, digits) for x in p))
    for idx, normal in faces:
        ring = _orient_face(points, idx, normal)
        lines.append(" ".join(str(v) for v in [len(ring), *ring]))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# SVG
# --------------------------------------------------------------------------

def polygon_svg(P: Polygon2, digits: int = DEFAULT_DIGITS, stroke: str = "black",
                stroke_width: float = 0.002, fill: str = "none", margin: float = 0.05,
                size: int = 800) -> str:
    """SVG drawing of P; the viewBox fits the polygon with a relative margin.

    The y axis is flipped so the picture has the usual mathematical orientation.
    """
    if not P.points:
        raise ValueError("cannot draw an empty polygon")
    xs = [p[0] for p in P.points]
    ys = [-p[1] for p in P.points]
    w = max(max(xs) - min(xs), max(ys) - min(ys)) or Fraction(1)
    pad = w * Fraction(margin).limit_denominator(1000)
    x0, y0 = min(xs) - pad, min(ys) - pad
    span_x = max(xs) - min(xs) + 2 * pad
    span_y = max(ys) - min(ys) + 2 * pad
    f = lambda x: decimal_str(Fraction(x), digits)  # noqa: E731
    pts = " ".join(f"{f(x)},{f(y)}" for x, y in zip(xs, ys))
    sw = f(w * Fraction(stroke_width).limit_denominator(100000))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{f(x0)} {f(y0)} {f(span_x)} {f(span_y)}">\n'
        f'  <polygon points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="{sw}"/>\n'
        f"</svg>\n"
    )
