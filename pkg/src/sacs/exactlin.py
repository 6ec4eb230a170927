"""Exact linear algebra over the integers and over GF(2).

Integer matrices are plain lists of rows of Python ints, so entries never
overflow.  GF(2) matrices pack each row into an int bitset (bit ``j`` holds
column ``j``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

IntMatrix = list[list[int]]


def as_matrix(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Copy ``rows`` into a fresh integer matrix, checking that it is rectangular."""
    out = [[int(v) for v in r] for r in rows]
    width = ncols if ncols is not None else (len(out[0]) if out else 0)
    for k, r in enumerate(out):
        if len(r) != width:
            raise ValueError(f"row {k} has length {len(r)}, expected {width}")
    return out


def shape(A: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    m, k = shape(A)
    k2, n = shape(B)
    if k != k2 and m and k2:
        raise ValueError(f"cannot multiply {m}x{k} by {k2}x{n}")
    if not B:
        return [[] for _ in range(m)]
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n, m = shape(A)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = as_matrix(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """``A == U @ D @ V`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``diagonal`` lists ``min(rows, cols)`` non-negative invariant factors, each
    dividing the next, zeros last.  ``P = U^-1`` and ``Q = V^-1`` satisfy
    ``P @ A @ Q == D`` and are kept because solving needs them.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    P: IntMatrix
    Q: IntMatrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


class _Tracker:
    """Working copy of a matrix plus the four transforms, updated in lockstep."""

    def __init__(self, A: IntMatrix, n: int):
        m = len(A)
        self.m, self.n = m, n
        self.D = as_matrix(A, n)
        self.P, self.Pinv = identity(m), identity(m)
        self.Q, self.Qinv = identity(n), identity(n)

    # row operations act on D and P from the left, on Pinv from the right
    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        for M in (self.D, self.P):
            M[i], M[k] = M[k], M[i]
        for row in self.Pinv:
            row[i], row[k] = row[k], row[i]

    def negate_row(self, i: int) -> None:
        for M in (self.D, self.P):
            M[i] = [-v for v in M[i]]
        for row in self.Pinv:
            row[i] = -row[i]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row[target] += q * row[source]."""
        for M in (self.D, self.P):
            src = M[source]
            M[target] = [a + q * b for a, b in zip(M[target], src)]
        for row in self.Pinv:
            row[source] -= q * row[target]

    # column operations act on D and Q from the right, on Qinv from the left
    def swap_cols(self, j: int, k: int) -> None:
        if j == k:
            return
        for M in (self.D, self.Q):
            for row in M:
                row[j], row[k] = row[k], row[j]
        self.Qinv[j], self.Qinv[k] = self.Qinv[k], self.Qinv[j]

    def add_col(self, target: int, source: int, q: int) -> None:
        """col[target] += q * col[source]."""
        for M in (self.D, self.Q):
            for row in M:
                row[target] += q * row[source]
        src = self.Qinv[target]
        self.Qinv[source] = [a - q * b for a, b in zip(self.Qinv[source], src)]


def snf(A: Sequence[Sequence[int]], ncols: int | None = None) -> SnfResult:
    """Smith normal form with both unimodular transforms."""
    n = ncols if ncols is not None else shape(A)[1]
    t = _Tracker(as_matrix(A, n), n)
    D = t.D
    m, n = t.m, t.n
    for s in range(min(m, n)):
        pivot = _min_abs(D, s, s, m, n)
        if pivot is None:
            break
        t.swap_rows(s, pivot[0])
        t.swap_cols(s, pivot[1])
        while True:
            dirty = False
            p = D[s][s]
            for i in range(s + 1, m):
                if D[i][s]:
                    t.add_row(i, s, -(D[i][s] // p))
                    dirty = dirty or D[i][s] != 0
            for j in range(s + 1, n):
                if D[s][j]:
                    t.add_col(j, s, -(D[s][j] // p))
                    dirty = dirty or D[s][j] != 0
            if dirty:
                i, j = _min_abs_cross(D, s, m, n)
                t.swap_rows(s, i)
                t.swap_cols(s, j)
                continue
            bad = next((i for i in range(s + 1, m)
                        for j in range(s + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            t.add_row(s, bad, 1)
        if D[s][s] < 0:
            t.negate_row(s)
    diagonal = tuple(D[i][i] for i in range(min(m, n)))
    return SnfResult(U=t.Pinv, D=D, V=t.Qinv, P=t.P, Q=t.Q, diagonal=diagonal)


def _min_abs(D: IntMatrix, r0: int, c0: int, m: int, n: int) -> tuple[int, int] | None:
    best = None
    for i in range(r0, m):
        for j in range(c0, n):
            v = abs(D[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
                if v == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


def _min_abs_cross(D: IntMatrix, s: int, m: int, n: int) -> tuple[int, int]:
    cells = [(i, s) for i in range(s, m)] + [(s, j) for j in range(s + 1, n)]
    return min((c for c in cells if D[c[0]][c[1]]), key=lambda c: abs(D[c[0]][c[1]]))


def solve_integral(A: Sequence[Sequence[int]], b: Sequence[int],
                   ncols: int | None = None) -> list[int] | None:
    """Some integer ``x`` with ``A x = b``, or ``None`` when none exists."""
    m, n = len(A), (ncols if ncols is not None else shape(A)[1])
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    res = snf(A, n)
    c = matvec(res.P, b)
    y = [0] * n
    for i, ci in enumerate(c):
        d = res.diagonal[i] if i < len(res.diagonal) else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return matvec(res.Q, y)


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive, entries above a pivot are reduced into ``[0, pivot)``
    and zero rows are dropped, so two spanning sets of one lattice give the
    same output.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            rows.sort(key=lambda r: (r[col] == 0, abs(r[col])))
            p = rows[0]
            for r in rows[1:]:
                if r[col]:
                    q = r[col] // p[col]
                    for k in range(col, n):
                        r[k] -= q * p[k]
        rows.sort(key=lambda r: r[col] == 0)
        p = rows.pop(0)
        if p[col] < 0:
            p = [-v for v in p]
        for r in out:
            q = r[col] // p[col]
            if q:
                for k in range(col, n):
                    r[k] -= q * p[k]
        out.append(p)
        rows = [r for r in rows if any(r)]
        col += 1
    return out


def kernel_basis(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """A Z-basis of ``{x : A x = 0}`` in Hermite normal form."""
    n = ncols if ncols is not None else shape(A)[1]
    res = snf(A, n)
    cols = transpose(res.Q, n)
    return hermite_rows(cols[res.rank:])


# GF(2)


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        packed = []
        for r in rows:
            if len(r) != n:
                raise ValueError("ragged GF(2) matrix")
            packed.append(pack_bits(r))
        return cls(len(rows), n, tuple(packed))

    def to_rows(self) -> list[list[int]]:
        return [unpack_bits(r, self.cols) for r in self.data]

    def apply(self, x: Sequence[int]) -> list[int]:
        v = pack_bits(x)
        return [bin(r & v).count("1") & 1 for r in self.data]


def pack_bits(bits: Sequence[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def unpack_bits(word: int, n: int) -> list[int]:
    return [(word >> j) & 1 for j in range(n)]


def _f2_rref(rows: Sequence[int], ncols: int, rhs: Sequence[int] | None = None):
    """Reduced echelon form; returns (rows, rhs bits, pivot columns)."""
    R = list(rows)
    b = list(rhs) if rhs is not None else [0] * len(R)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        k = next((i for i in range(r, len(R)) if R[i] & bit), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        b[r], b[k] = b[k], b[r]
        for i in range(len(R)):
            if i != r and R[i] & bit:
                R[i] ^= R[r]
                b[i] ^= b[r]
        pivots.append(col)
        r += 1
        if r == len(R):
            break
    return R, b, pivots


def f2_rank(A: F2Matrix) -> int:
    return len(_f2_rref(A.data, A.cols)[2])


def f2_solve(A: F2Matrix, b: Sequence[int]) -> list[int] | None:
    """A solution of ``A x = b`` over GF(2) (free variables set to 0), or None."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    R, rhs, pivots = _f2_rref(A.data, A.cols, [v & 1 for v in b])
    if any(rhs[i] for i in range(len(pivots), len(R))):
        return None
    x = [0] * A.cols
    for i, col in enumerate(pivots):
        x[col] = rhs[i]
    return x


def f2_kernel(A: F2Matrix) -> list[list[int]]:
    """Basis of the GF(2) null space, one vector per free column in order."""
    R, _, pivots = _f2_rref(A.data, A.cols)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * A.cols
        x[f] = 1
        for i, col in enumerate(pivots):
            if (R[i] >> f) & 1:
                x[col] = 1
        basis.append(x)
    return basis
