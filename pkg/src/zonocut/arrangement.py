"""Central hyperplane arrangements given by a rational matrix.

Row ``a_j`` of the matrix defines the linear hyperplane ``a_j x = 0`` in
R^d; slicing at ``x_0 = 1`` gives the affine arrangement in R^(d-1).
Faces are encoded by sign vectors, stored as tuples over ``{1, 0, -1}``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from .exactmath import RatMat, RatVec, dot, find_point, kernel_basis, rank, sign, vec

SignVector = Tuple[int, ...]

_SIGN_CHARS = {1: "+", 0: "0", -1: "-"}
_CHAR_SIGNS = {"+": 1, "0": 0, "-": -1}


class ArrangementError(ValueError):
    """The matrix violates the standing assumptions on arrangements."""


class AtInfinityError(ValueError):
    pass


def format_signs(sigma: Sequence[int]) -> str:
    return "".join(_SIGN_CHARS[s] for s in sigma)


def parse_signs(text: str) -> SignVector:
    try:
        return tuple(_CHAR_SIGNS[c] for c in text)
    except KeyError as exc:
        raise ValueError(f"bad sign character {exc.args[0]!r} in {text!r}") from None


def negate(sigma: Sequence[int]) -> SignVector:
    return tuple(-s for s in sigma)


def zeros(sigma: Sequence[int]) -> FrozenSet[int]:
    return frozenset(j for j, s in enumerate(sigma) if s == 0)


def conforms(face: Sequence[int], cell: Sequence[int]) -> bool:
    """True if ``face`` is obtained from ``cell`` by zeroing some entries."""
    return all(f == 0 or f == c for f, c in zip(face, cell))


def expansions(sigma: Sequence[int]) -> list[SignVector]:
    """All zero-free sign vectors obtained by replacing each 0 by + or -."""
    zs = sorted(zeros(sigma))
    out = []
    for choice in itertools.product((1, -1), repeat=len(zs)):
        s = list(sigma)
        for j, c in zip(zs, choice):
            s[j] = c
        out.append(tuple(s))
    return out


@dataclass(frozen=True)
class ArrangementMatrix:
    """An ``m x d`` matrix of full column rank with pairwise non-parallel rows,
    none of them parallel to ``e_0``."""

    A: RatMat

    def __post_init__(self):
        A = self.A
        if not isinstance(A, RatMat):
            object.__setattr__(self, "A", RatMat(A))
            A = self.A
        m, d = A.shape
        if d < 1 or m < 1:
            raise ArrangementError("empty matrix")
        if rank(A) != d:
            raise ArrangementError(f"matrix has rank {rank(A)} < d = {d}")
        for j, row in enumerate(A):
            if all(v == 0 for v in row[1:]):
                raise ArrangementError(f"row {j} is zero or a multiple of the first unit vector")
        seen = {}
        for j, row in enumerate(A):
            key = _projective_key(row)
            if key in seen:
                raise ArrangementError(f"rows {seen[key]} and {j} are parallel")
            seen[key] = j

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "ArrangementMatrix":
        return cls(RatMat(rows))

    @property
    def m(self) -> int:
        return self.A.nrows

    @property
    def d(self) -> int:
        return self.A.ncols

    def row(self, j: int) -> RatVec:
        return self.A[j]

    def combine(self, sigma: Sequence[int]) -> RatVec:
        """The row vector ``sigma A``."""
        return self.A.left_apply([Fraction(s) for s in sigma])


def _projective_key(v: Sequence[Fraction]) -> RatVec:
    """Scale so the first nonzero entry is 1 (identifies +-v)."""
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def canonical_direction(v: Sequence[Fraction]) -> RatVec:
    """Scale so the first nonzero entry is +1 or -1, keeping orientation."""
    lead = next(x for x in v if x != 0)
    return tuple(x / abs(lead) for x in v)


@dataclass(frozen=True, order=True)
class ArrangementRay:
    direction: RatVec
    sign: SignVector
    incident_rows: FrozenSet[int]


@dataclass(frozen=True, order=True)
class AffineVertex:
    coords: RatVec
    sign: SignVector
    incident_rows: FrozenSet[int]
    generic: bool


def sign_map(A: ArrangementMatrix, x: Sequence) -> SignVector:
    x = vec(x)
    if len(x) != A.d:
        raise ValueError(f"dimension mismatch: point has {len(x)} coordinates, d = {A.d}")
    return tuple(sign(dot(a, x)) for a in A.A)


def homogenize(coords: Sequence) -> RatVec:
    return (Fraction(1),) + vec(coords)


def dehomogenize(x: Sequence) -> RatVec:
    x = vec(x)
    if x[0] == 0:
        raise AtInfinityError(f"point {x} lies at infinity (x_0 = 0)")
    return tuple(v / x[0] for v in x[1:])


def _line_of(A: RatMat, subset: Tuple[int, ...]) -> Optional[RatVec]:
    ker = kernel_basis(A.select_rows(subset))
    if len(ker) != 1:
        return None
    return canonical_direction(ker[0])


def _lines_chunk(args):
    A, subsets = args
    return [_line_of(A, s) for s in subsets]


def enumerate_rays(A: ArrangementMatrix, jobs: int = 1) -> Tuple[ArrangementRay, ...]:
    """All 1-dimensional faces of the central arrangement, sorted by direction."""
    d, M = A.d, A.A
    subsets = list(itertools.combinations(range(A.m), d - 1))
    if jobs > 1 and len(subsets) > 64:
        size = -(-len(subsets) // (4 * jobs))
        chunks = [(M, subsets[i:i + size]) for i in range(0, len(subsets), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            lines = [l for part in pool.map(_lines_chunk, chunks) for l in part]
    else:
        lines = [_line_of(M, s) for s in subsets]

    directions = set()
    for line in lines:
        if line is not None:
            directions.add(line)
            directions.add(tuple(-v for v in line))
    rays = []
    for r in directions:
        s = sign_map(A, r)
        rays.append(ArrangementRay(r, s, zeros(s)))
    return tuple(sorted(rays))


def enumerate_affine_vertices(A: ArrangementMatrix, rays: Optional[Sequence[ArrangementRay]] = None
                              ) -> Tuple[AffineVertex, ...]:
    if rays is None:
        rays = enumerate_rays(A)
    d = A.d
    out = {}
    for r in rays:
        if r.direction[0] <= 0:
            continue
        coords = dehomogenize(r.direction)
        if coords in out:  # cannot happen for canonical rays, kept as a guard
            prev = out[coords]
            inc = prev.incident_rows | r.incident_rows
            out[coords] = AffineVertex(coords, prev.sign, inc, len(inc) == d - 1)
        else:
            out[coords] = AffineVertex(coords, r.sign, r.incident_rows, len(r.incident_rows) == d - 1)
    return tuple(sorted(out.values()))


def realizing_point(A: ArrangementMatrix, sigma: Sequence[int]) -> Optional[RatVec]:
    """A point ``x`` with ``sign(a_j x) = sigma_j`` for all j, or None."""
    if len(sigma) != A.m:
        raise ValueError(f"sign vector has length {len(sigma)}, expected {A.m}")
    eq = [A.row(j) for j, s in enumerate(sigma) if s == 0]
    ge = [tuple(s * v for v in A.row(j)) for j, s in enumerate(sigma) if s != 0]
    return find_point(eq, ge, A.d)


def realizable(A: ArrangementMatrix, sigma: Sequence[int]) -> bool:
    return realizing_point(A, sigma) is not None


def realizable_refinements(A: ArrangementMatrix, sigma: Sequence[int]) -> list[SignVector]:
    """Realizable zero-free refinements of a realizable sign vector.

    If the rows on the zero set of ``sigma`` are linearly independent, every
    refinement is realizable near a point of the face, so no LP is needed.
    """
    zs = sorted(zeros(sigma))
    cands = expansions(sigma)
    if not zs or rank(A.A.select_rows(zs)) == len(zs):
        return cands
    return [s for s in cands if realizable(A, s)]


def region_sign_vectors(A: ArrangementMatrix, rays: Optional[Sequence[ArrangementRay]] = None
                        ) -> Tuple[SignVector, ...]:
    """Sign vectors of all regions (d-dimensional cells), sorted descending.

    Every region of an essential central arrangement with d >= 2 is a pointed
    cone, so it has an extreme ray and shows up among the refinements of ray
    sign vectors.
    """
    if rays is None:
        rays = enumerate_rays(A)
    regions = set()
    for r in rays:
        regions.update(realizable_refinements(A, r.sign))
    return tuple(sorted(regions, reverse=True))
