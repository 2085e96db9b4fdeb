"""Zonotopes ``Z = sum [-a_j, a_j]`` and their polar duals ``Z* = {x : sum |a_j x| <= 1}``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Tuple

from .arrangement import (
    ArrangementMatrix,
    ArrangementRay,
    SignVector,
    enumerate_rays,
    realizable,
    realizable_refinements,
    region_sign_vectors,
    sign_map,
    zeros,
)
from .exactmath import RatMat, RatVec, dot, kernel_basis, rank, sign, vec


class FaceError(ValueError):
    """Sign vector does not label a face of the dual zonotope."""


def support_eval(A: ArrangementMatrix, x: Sequence) -> Fraction:
    """``f_A(x) = sum_j |a_j x|``; Z* is its unit ball."""
    x = vec(x)
    if len(x) != A.d:
        raise ValueError(f"dimension mismatch: point has {len(x)} coordinates, d = {A.d}")
    return sum((abs(dot(a, x)) for a in A.A), Fraction(0))


@dataclass(frozen=True)
class DualZonotope:
    arrangement: ArrangementMatrix
    jobs: int = 1

    @property
    def d(self) -> int:
        return self.arrangement.d

    @cached_property
    def rays(self) -> Tuple[ArrangementRay, ...]:
        return enumerate_rays(self.arrangement, jobs=self.jobs)

    @cached_property
    def regions(self) -> Tuple[SignVector, ...]:
        return region_sign_vectors(self.arrangement, self.rays)

    @cached_property
    def vertices(self) -> Tuple[Tuple[RatVec, SignVector], ...]:
        A = self.arrangement
        out = []
        for r in self.rays:
            f = support_eval(A, r.direction)
            out.append((tuple(v / f for v in r.direction), r.sign))
        return tuple(out)

    def facet_vertices(self, sigma: Sequence[int]) -> list[Tuple[RatVec, SignVector]]:
        """Vertices of the face labelled ``sigma`` (those whose sign conforms to it)."""
        return [(x, s) for x, s in self.vertices
                if all(a == 0 or a == b for a, b in zip(s, sigma))]


def dual_vertices(Z: DualZonotope) -> Tuple[Tuple[RatVec, SignVector], ...]:
    return Z.vertices


def facet_inequalities(Z: DualZonotope) -> list[Tuple[RatVec, Fraction]]:
    """One inequality ``(sigma A) x <= 1`` per region sigma."""
    A = Z.arrangement
    return [(A.combine(s), Fraction(1)) for s in Z.regions]


def _check_face(Z: DualZonotope, sigma: Sequence[int], witness: Sequence | None = None) -> None:
    """Raise unless sigma labels a proper face.

    A ``witness`` point with sign vector sigma replaces the LP check.
    """
    A = Z.arrangement
    if len(sigma) != A.m:
        raise FaceError(f"sign vector has length {len(sigma)}, expected {A.m}")
    if not any(sigma):
        raise FaceError("the all-zero sign vector labels no proper face")
    if witness is not None and sign_map(A, witness) == tuple(sigma):
        return
    if not realizable(A, sigma):
        raise FaceError("sign vector is not realizable")


def normals_matrix(Z: DualZonotope, sigma: Sequence[int], witness: Sequence | None = None) -> RatMat:
    """Outer normals ``tau A`` of the facets containing the face ``sigma``.

    Rows are ordered by their sign vectors tau, descending.
    """
    _check_face(Z, sigma, witness)
    A = Z.arrangement
    taus = sorted(realizable_refinements(A, sigma), reverse=True)
    return RatMat((A.combine(t) for t in taus), ncols=A.d)


def face_dimension(Z: DualZonotope, sigma: Sequence[int], witness: Sequence | None = None) -> int:
    _check_face(Z, sigma, witness)
    A = Z.arrangement
    zs = sorted(zeros(sigma))
    if not zs:
        return A.d - 1
    return A.d - 1 - rank(A.A.select_rows(zs))


@dataclass(frozen=True)
class ZonotopeVertexSet:
    vertices: Tuple[Tuple[RatVec, SignVector], ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def points(self) -> list[RatVec]:
        return [p for p, _ in self.vertices]


def zonotope_vertices(A: ArrangementMatrix, regions: Sequence[SignVector] | None = None
                      ) -> ZonotopeVertexSet:
    if regions is None:
        regions = region_sign_vectors(A)
    return ZonotopeVertexSet(tuple((A.combine(s), tuple(s)) for s in regions))


def edge_sign_vectors(Z: DualZonotope) -> Tuple[SignVector, ...]:
    """Sign vectors of all edges of Z*, found around each vertex.

    Edges at a vertex ``r`` correspond to rank-(d-2) flats L of its incident
    rows.  The kernel of L is a plane through r; for any w in it off the line
    of r, the two edges along L have the signs of ``r +- eps w``, so every
    flat contributes exactly two edges and no LP is needed.
    """
    A, d = Z.arrangement, Z.d
    edges = set()
    for r in Z.rays:
        zv = sorted(r.incident_rows)
        flats = set()
        for T in itertools.combinations(zv, d - 2):
            if rank(A.A.select_rows(T)) != d - 2:
                continue
            flats.add(frozenset(j for j in zv if rank(A.A.select_rows(T + (j,))) == d - 2))
        for flat in flats:
            plane = kernel_basis(A.A.select_rows(sorted(flat)))
            w = next(v for v in plane if rank(RatMat([r.direction, v])) == 2)
            free = [j for j in zv if j not in flat]
            for t in (1, -1):
                s = list(r.sign)
                for j in free:
                    s[j] = t * sign(dot(A.row(j), w))
                edges.add(tuple(s))
    return tuple(sorted(edges, reverse=True))
