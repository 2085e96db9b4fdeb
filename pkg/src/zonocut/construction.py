"""Explicit dual zonotopes with large 2D-shadows.

The main family is indexed by ``d >= 2`` and ``k >= 1``; with ``n = 4k + 1``
it has ``n (d-1)`` zones arranged in ``d - 1`` blocks of ``n`` rows each.
Blocks are numbered from 1, coordinates from 0, rows within a block from 0
(first the ``2k + 1`` "b" rows, then the ``2k`` "b'" rows).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .arrangement import ArrangementMatrix, SignVector, conforms, negate
from .exactmath import (
    RatMat,
    RatVec,
    feasible_strictly_positive_combination,
    find_point,
    kernel_basis,
    rank,
    solve,
    vec,
)
from .projection import Polygon2, hull2
from .zonotope import DualZonotope


class ParameterError(ValueError):
    pass


class ProjectionSearchError(RuntimeError):
    """No perturbed projection met the vertex-count target."""


@dataclass(frozen=True)
class EasterEggParams:
    d: int
    k: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ParameterError(f"d must be an integer >= 2, got {self.d!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ParameterError(f"k must be an integer >= 1, got {self.k!r}")

    @property
    def n(self) -> int:
        return 4 * self.k + 1

    @property
    def m(self) -> int:
        return self.n * (self.d - 1)

    @property
    def alpha(self) -> Fraction:
        return Fraction(1, self.n + 1)

    def eps(self, i: int) -> Fraction:
        return self.alpha ** (i - 1)

    def delta(self, i: int) -> Fraction:
        return self.alpha ** (i - 1)

    def block_rows(self, i: int) -> range:
        """Matrix row indices of block i (1-based)."""
        return range((i - 1) * self.n, i * self.n)


@dataclass(frozen=True)
class BlockRhs:
    b: RatVec
    b_prime: RatVec

    @classmethod
    def for_k(cls, k: int) -> "BlockRhs":
        b = tuple(Fraction(k - i) for i in range(2 * k + 1))
        bp = tuple(Fraction(2 * i - 2 * k + 1, 2) for i in range(2 * k))
        return cls(b, bp)


def easteregg_matrix(params: EasterEggParams) -> ArrangementMatrix:
    d, k, n = params.d, params.k, params.n
    rhs = BlockRhs.for_k(k)
    rows = []
    for i in range(1, d):
        scale = params.delta(i)
        c0 = params.eps(i) * scale
        for r in range(n):
            row = [Fraction(0)] * d
            if r <= 2 * k:
                row[0] = c0 * rhs.b[r]
                row[i] = scale
            else:
                row[0] = c0 * rhs.b_prime[r - 2 * k - 1]
                row[i] = -scale
            if i + 1 < d:
                row[i + 1] = scale
            rows.append(row)
    return ArrangementMatrix(RatMat(rows, ncols=d))


# --------------------------------------------------------------------------
# sign patterns
# --------------------------------------------------------------------------

def zero_sum_block_patterns(k: int) -> list[SignVector]:
    """The n block patterns with one zero and balanced signs, ordered by zero position."""
    out = []
    for p in range(2 * k + 1):
        sigma = (1,) * p + (0,) + (-1,) * (2 * k - p)
        prime = (-1,) * p + (1,) * (2 * k - p)
        out.append(sigma + prime)
    for p in range(2 * k):
        sigma = (1,) * (p + 1) + (-1,) * (2 * k - p)
        prime = (-1,) * p + (0,) + (1,) * (2 * k - 1 - p)
        out.append(sigma + prime)
    return out


def last_block_patterns(k: int) -> list[SignVector]:
    """The n + 1 zero-free staircase patterns with block sum +1 or -1."""
    out = []
    for p in range(2 * k + 2):
        for q in (p - 1, p):
            if 0 <= q <= 2 * k:
                out.append((1,) * p + (-1,) * (2 * k + 1 - p) + (-1,) * q + (1,) * (2 * k - q))
    return out


def selected_vertex_signs(params: EasterEggParams) -> Tuple[SignVector, ...]:
    blocks = zero_sum_block_patterns(params.k)
    return tuple(sum(combo, ()) for combo in itertools.product(blocks, repeat=params.d - 1))


def surviving_edge_signs(params: EasterEggParams) -> Tuple[SignVector, ...]:
    if params.d < 3:
        raise ParameterError("the surviving edge family is only defined for d >= 3")
    blocks = zero_sum_block_patterns(params.k)
    last = last_block_patterns(params.k)
    half = [sum(combo, ()) + tail
            for combo in itertools.product(blocks, repeat=params.d - 2) for tail in last]
    return tuple(half + [negate(s) for s in half])


def predicted_shadow_vertices(d: int, n: int) -> int:
    if d < 2 or n % 4 != 1:
        raise ParameterError(f"need d >= 2 and n = 1 mod 4, got d={d}, n={n}")
    return 2 * n ** (d - 1) + 2 * n ** (d - 2)


def predicted_az_vertices(d: int, n: int) -> int:
    """Vertex count of the product-of-polygons construction: (2n/(d-1))^((d-1)/2)."""
    if d < 3 or d % 2 == 0:
        raise ParameterError(f"d must be odd and >= 3, got {d}")
    if n <= 0 or n % (d - 1) != 0:
        raise ParameterError(f"n must be an even multiple of (d-1)/2 = {(d - 1) // 2}, got {n}")
    return (2 * n // (d - 1)) ** ((d - 1) // 2)


def vertex_on_hyperplanes(A: ArrangementMatrix, rows: Sequence[int]) -> Optional[RatVec]:
    """Affine point ``v`` with ``a_j (1, v) = 0`` for the given rows, if unique."""
    sub = A.A.select_rows(rows)
    tail = RatMat((r[1:] for r in sub), ncols=A.d - 1)
    if rank(tail) != A.d - 1:
        return None
    return solve(tail, [-r[0] for r in sub])


# --------------------------------------------------------------------------
# a prescribed polytope as a facet
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FacetSpec:
    """The polytope ``{x : A_F x <= b_F}`` in R^(d-1)."""

    A_F: RatMat
    b_F: RatVec

    def __post_init__(self):
        if not isinstance(self.A_F, RatMat):
            object.__setattr__(self, "A_F", RatMat(self.A_F))
        object.__setattr__(self, "b_F", vec(self.b_F))
        if len(self.b_F) != self.A_F.nrows:
            raise ParameterError("A_F and b_F have different numbers of rows")
        dim = self.A_F.ncols
        if rank(self.A_F) != dim or feasible_strictly_positive_combination(self.A_F) is None:
            raise ParameterError("polytope is unbounded (rows do not positively span)")
        # full-dimensional iff some (t, x) with t > 0 has b t - A x > 0
        ge = [(Fraction(1),) + (Fraction(0),) * dim]
        ge += [(bi,) + tuple(-a for a in row) for row, bi in zip(self.A_F, self.b_F)]
        if find_point([], ge, dim + 1) is None:
            raise ParameterError("polytope is empty or not full-dimensional")

    @property
    def dim(self) -> int:
        return self.A_F.ncols


def polytope_vertices(F: FacetSpec) -> list[RatVec]:
    """Vertices of F by brute force over (dim)-subsets of the constraints."""
    dim = F.dim
    found = set()
    for rows in itertools.combinations(range(F.A_F.nrows), dim):
        sub = F.A_F.select_rows(rows)
        if rank(sub) != dim:
            continue
        x = solve(sub, [F.b_F[j] for j in rows])
        if all(v <= b for v, b in zip(F.A_F.apply(x), F.b_F)):
            found.add(x)
    return sorted(found)


def recenter(F: FacetSpec) -> Tuple[FacetSpec, RatVec]:
    """Translate F so the vertex centroid is the origin; returns (F - c, c)."""
    verts = polytope_vertices(F)
    c = tuple(sum(col, Fraction(0)) / len(verts) for col in zip(*verts))
    shift = F.A_F.apply(c)
    return FacetSpec(F.A_F, tuple(b - s for b, s in zip(F.b_F, shift))), c


def embed_facet(F: FacetSpec) -> ArrangementMatrix:
    """Rows ``(-b_i, A_i)`` rescaled to sum to ``e_0``.

    The dual zonotope then has the facet ``Z* ∩ {x_0 = 1}``, whose slice is F
    (translated to have the vertex centroid at the origin if some ``b_i <= 0``).
    """
    if any(b <= 0 for b in F.b_F):
        F, _ = recenter(F)
    lam = feasible_strictly_positive_combination(F.A_F)
    if lam is None:
        raise ParameterError("no strictly positive dependency among the facet normals")
    total = sum((l * b for l, b in zip(lam, F.b_F)), Fraction(0))
    if total <= 0:
        raise ParameterError("degenerate scaling: sum of lambda_j b_j is not positive")
    rows = []
    for l, row, b in zip(lam, F.A_F, F.b_F):
        s = -l / total
        rows.append((s * -b,) + tuple(s * a for a in row))
    return ArrangementMatrix(RatMat(rows, ncols=F.dim + 1))


def slice_at_x0_one(Z: DualZonotope) -> list[RatVec]:
    """Vertices of the facet ``Z* ∩ {x_0 = 1}``, dehomogenized."""
    return sorted(x[1:] for x, _ in Z.vertices if x[0] == 1)


def affine_equivalence(P: Sequence[RatVec], Q: Sequence[RatVec]) -> Optional[Tuple[RatMat, RatVec]]:
    """Find an invertible affine map ``x -> M x + t`` sending the point set P onto Q.

    Tries every assignment of an affinely independent frame of P into Q and
    verifies the resulting map on all points.
    """
    P, Q = [vec(p) for p in P], [vec(q) for q in Q]
    if len(P) != len(Q) or not P:
        return None
    dim = len(P[0])
    frame = _affine_frame(P)
    if frame is None:
        return None
    target = set(Q)
    for images in itertools.permutations(Q, dim + 1):
        # unknowns: row-major entries of M, then t
        eqs, rhs = [], []
        for pi, qi in zip(frame, images):
            for r in range(dim):
                row = [Fraction(0)] * (dim * dim + dim)
                for c in range(dim):
                    row[r * dim + c] = pi[c]
                row[dim * dim + r] = Fraction(1)
                eqs.append(row)
                rhs.append(qi[r])
        sol = solve(RatMat(eqs, ncols=dim * dim + dim), rhs)
        if sol is None:
            continue
        M = RatMat([sol[r * dim:(r + 1) * dim] for r in range(dim)], ncols=dim)
        t = sol[dim * dim:]
        if rank(M) != dim:
            continue
        mapped = {tuple(a + b for a, b in zip(M.apply(p), t)) for p in P}
        if mapped == target:
            return M, t
    return None


def _affine_frame(P: Sequence[RatVec]) -> Optional[list[RatVec]]:
    dim = len(P[0])
    frame = [P[0]]
    for p in P[1:]:
        cand = frame + [p]
        diffs = RatMat([tuple(a - b for a, b in zip(q, frame[0])) for q in cand[1:]], ncols=dim)
        if rank(diffs) == len(cand) - 1:
            frame = cand
        if len(frame) == dim + 1:
            return frame
    return None


# --------------------------------------------------------------------------
# projecting a centrally symmetric 3-polytope with a large facet
# --------------------------------------------------------------------------

def projection_along(direction: Sequence[Fraction]) -> RatMat:
    """A rational 2x3 projection whose kernel is spanned by ``direction``."""
    rows = kernel_basis(RatMat([direction], ncols=len(direction)))
    return RatMat(rows, ncols=len(direction))


def project_points(P: RatMat, points: Sequence[RatVec]) -> Polygon2:
    return hull2([P.apply(x) for x in points])


def symmetric_facet_projection(points: Sequence[RatVec], facet_size: int, normal: Sequence[Fraction],
                               seed: int = 0, draws: int = 16, max_halvings: int = 40) -> RatMat:
    """Projection of a centrally symmetric 3-polytope (given by its vertices)
    whose image has at least ``facet_size`` vertices.

    Starts from a direction parallel to the facet, drawn from a seeded
    sequence of small integer vectors, tilts it by ``+-eps * normal`` and halves
    eps until the target is met.
    """
    normal = vec(normal)
    nn = sum(a * a for a in normal)
    rng = random.Random(seed)
    for _ in range(draws):
        w = tuple(Fraction(rng.randint(-9, 9)) for _ in range(3))
        c = sum(a * b for a, b in zip(w, normal)) / nn
        u = tuple(a - c * b for a, b in zip(w, normal))
        if not any(u):
            continue
        eps = Fraction(1)
        for _ in range(max_halvings):
            for s in (1, -1):
                direction = tuple(a + s * eps * b for a, b in zip(u, normal))
                P = projection_along(direction)
                if len(project_points(P, points)) >= facet_size:
                    return P
            eps /= 2
    raise ProjectionSearchError(f"no projection with >= {facet_size} vertices found")


def cs_shadow_projection(Z: DualZonotope, facet_sign: Sequence[int], seed: int = 0, **kw) -> RatMat:
    if Z.d != 3:
        raise ParameterError("cs_shadow_projection needs a 3-dimensional dual zonotope")
    if 0 in facet_sign or tuple(facet_sign) not in set(Z.regions):
        raise ParameterError("facet_sign does not label a facet")
    facet = [x for x, s in Z.vertices if conforms(s, facet_sign)]
    normal = Z.arrangement.combine(facet_sign)
    return symmetric_facet_projection([x for x, _ in Z.vertices], len(facet), normal, seed=seed, **kw)


def largest_facet(Z: DualZonotope) -> Tuple[SignVector, int]:
    """A region sign vector whose facet has the most vertices (first in canonical order on ties)."""
    best = None
    for sigma in Z.regions:
        size = sum(1 for _, s in Z.vertices if conforms(s, sigma))
        if best is None or size > best[1]:
            best = (sigma, size)
    return best
