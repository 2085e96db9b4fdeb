"""Exact rational linear algebra and a small LP feasibility kernel.

Everything here works on :class:`fractions.Fraction`; nothing is ever
rounded.  Vectors are plain tuples of Fractions, matrices are :class:`RatMat`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from gmpy2 import mpq

Rat = Fraction
RatVec = Tuple[Fraction, ...]


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a Fraction or 'p/q' string")
    return Fraction(value)


def vec(values: Iterable) -> RatVec:
    return tuple(rat(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class RatMat:
    """Immutable dense rational matrix stored as a tuple of row tuples."""

    data: Tuple[RatVec, ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        data = tuple(vec(r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, i: int) -> RatVec:
        return self.data[i]

    def __iter__(self):
        return iter(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def col(self, j: int) -> RatVec:
        return tuple(r[j] for r in self.data)

    @property
    def T(self) -> "RatMat":
        return RatMat((self.col(j) for j in range(self.ncols)), ncols=self.nrows)

    def apply(self, x: Sequence[Fraction]) -> RatVec:
        """Matrix-vector product ``M x``."""
        if len(x) != self.ncols:
            raise ValueError(f"dimension mismatch: matrix has {self.ncols} columns, vector {len(x)}")
        return tuple(dot(r, x) for r in self.data)

    def left_apply(self, y: Sequence[Fraction]) -> RatVec:
        """Row-vector product ``y^T M``."""
        if len(y) != self.nrows:
            raise ValueError(f"dimension mismatch: matrix has {self.nrows} rows, vector {len(y)}")
        out = [Fraction(0)] * self.ncols
        for c, r in zip(y, self.data):
            if c:
                for j, a in enumerate(r):
                    out[j] += c * a
        return tuple(out)

    def __matmul__(self, other: "RatMat") -> "RatMat":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        cols = [other.col(j) for j in range(other.ncols)]
        return RatMat(([dot(r, c) for c in cols] for r in self.data), ncols=other.ncols)

    def select_rows(self, idx: Iterable[int]) -> "RatMat":
        return RatMat((self.data[i] for i in idx), ncols=self.ncols)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self.data)
        return f"RatMat({self.nrows}x{self.ncols}: [{body}])"


def _rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(M: RatMat) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return len(_rref(M.data, M.ncols)[1])


def kernel_basis(M: RatMat) -> list[RatVec]:
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    n = M.ncols
    if M.nrows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    red, pivots = _rref(M.data, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(M: RatMat, b: Sequence) -> Optional[RatVec]:
    """One exact solution of ``M x = b`` (free variables set to 0), or None."""
    b = vec(b)
    if len(b) != M.nrows:
        raise ValueError(f"dimension mismatch: {M.nrows} equations, rhs of length {len(b)}")
    n = M.ncols
    aug = [list(r) + [bi] for r, bi in zip(M.data, b)]
    red, pivots = _rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


# --------------------------------------------------------------------------
# Phase-I simplex, Bland's rule
# --------------------------------------------------------------------------

def _phase_one(A: list[list[Fraction]], b: list[Fraction]) -> Optional[list[Fraction]]:
    """Find ``y >= 0`` with ``A y = b`` or return None.

    Tableau phase I with one artificial per row; entering and leaving
    variables are chosen by smallest index, which rules out cycling.
    The pivot loop runs on gmpy2 rationals; results come back as Fractions.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    zero, one = mpq(0), mpq(1)
    rows = []
    for a, bi in zip(A, b):
        a, bi = [mpq(v) for v in a], mpq(bi)
        if bi < 0:
            a, bi = [-v for v in a], -bi
        rows.append(a + [one if i == len(rows) else zero for i in range(m)] + [bi])
    width = n + m
    basis = [n + i for i in range(m)]
    # reduced costs of the artificial-sum objective
    obj = [-sum((r[j] for r in rows), zero) for j in range(width + 1)]
    for j in range(n, width):
        obj[j] = zero

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded; cannot happen for a phase-I objective bounded below
            raise ArithmeticError("phase-I objective unbounded")
        leave = best[1]
        piv = rows[leave][enter]
        rows[leave] = [v / piv for v in rows[leave]]
        pr = rows[leave]
        for i, r in enumerate(rows):
            if i != leave and r[enter] != 0:
                f = r[enter]
                rows[i] = [u - f * w for u, w in zip(r, pr)]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [u - f * w for u, w in zip(obj, pr)]
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    y = [Fraction(0)] * width
    for i, j in enumerate(basis):
        y[j] = Fraction(int(rows[i][-1].numerator), int(rows[i][-1].denominator))
    return y[:n]


def find_point(eq_rows: Sequence[Sequence[Fraction]], ge_rows: Sequence[Sequence[Fraction]],
               dim: int) -> Optional[RatVec]:
    """Find ``x`` in R^dim with ``e x = 0`` for every ``e`` in eq_rows and
    ``g x >= 1`` for every ``g`` in ge_rows, or return None.

    Because the system is homogeneous apart from the threshold, this decides
    the open problem ``e x = 0, g x > 0``.
    """
    # x = p - q, slacks s for the >= rows
    ng = len(ge_rows)
    A, b = [], []
    for e in eq_rows:
        A.append(list(e) + [-v for v in e] + [Fraction(0)] * ng)
        b.append(Fraction(0))
    for i, g in enumerate(ge_rows):
        s = [Fraction(0)] * ng
        s[i] = Fraction(-1)
        A.append(list(g) + [-v for v in g] + s)
        b.append(Fraction(1))
    if not A:
        return tuple(Fraction(0) for _ in range(dim))
    y = _phase_one(A, b)
    if y is None:
        return None
    return tuple(y[i] - y[dim + i] for i in range(dim))


def feasible_strictly_positive_combination(M: RatMat) -> Optional[RatVec]:
    """Return lambda with every entry >= 1 and ``lambda^T M = 0``, or None."""
    p, q = M.shape
    if p == 0:
        return ()
    # lambda = 1 + mu, mu >= 0:  M^T mu = -M^T 1
    MT = M.T
    A = [list(r) for r in MT.data]
    b = [-sum(r, Fraction(0)) for r in MT.data]
    mu = _phase_one(A, b) if q else [Fraction(0)] * p
    if mu is None:
        return None
    return tuple(1 + v for v in mu)
