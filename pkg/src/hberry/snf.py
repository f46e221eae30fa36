"""Exact Smith normal form over the integers.

Matrices are lists of lists of Python ints, so all arithmetic is
arbitrary precision.  Besides the decomposition itself, this module
provides the two lattice primitives everything else is built on:
an integral kernel basis and exact solution of A x = b over Z.
"""

from __future__ import annotations

from .errors import ValidationError


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    if A and B and len(A[0]) != len(B):
        raise ValidationError("matrix dimension mismatch in mat_mul")
    n = len(B[0]) if B else 0
    return [
        [sum(a_ik * B[k][j] for k, a_ik in enumerate(row)) for j in range(n)]
        for row in A
    ]


def mat_vec(A: list[list[int]], x: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def _copy(A):
    return [list(row) for row in A]


def smith_normal_form_full(A):
    """Return (U, Uinv, S, V, Vinv) with U*A*V = S in Smith normal form.

    S is diagonal with nonnegative entries d_1 | d_2 | ... ; U and V are
    unimodular and Uinv, Vinv are their exact inverses (tracked through
    the elementary operations, not recomputed).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = _copy(A)
    U, Uinv = identity_matrix(m), identity_matrix(m)
    V, Vinv = identity_matrix(n), identity_matrix(n)

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, q):
        # row i += q * row j
        S[i] = [a + q * b for a, b in zip(S[i], S[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for row in Uinv:
            row[j] -= q * row[i]

    def row_negate(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_add(i, j, q):
        # col i += q * col j
        for row in S:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]
        Vinv[j] = [a - q * b for a, b in zip(Vinv[j], Vinv[i])]

    def pivot_candidate(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v != 0 and (best is None or abs(v) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        pos = pivot_candidate(t)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            # gcd-reduce column t, then row t, restarting on new remainders
            dirty = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    row_add(i, t, -q)
                    if S[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    col_add(j, t, -q)
                    if S[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % S[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if S[t][t] < 0:
            row_negate(t)
        t += 1
    return U, Uinv, S, V, Vinv


def smith_normal_form(A):
    """Return (U, S, V) with U*A*V = S, U and V unimodular."""
    U, _, S, V, _ = smith_normal_form_full(A)
    return U, S, V


def diagonal(S) -> list[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def rank_of_snf(S) -> int:
    return sum(1 for d in diagonal(S) if d != 0)


def kernel_basis(A) -> list[list[int]]:
    """Basis of the integral kernel lattice of A, as a list of columns.

    The columns of V beyond the rank span ker(A) over Z because V is
    unimodular, so the basis is automatically saturated.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    _, _, S, V, _ = smith_normal_form_full(A)
    r = rank_of_snf(S)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


class SnfSolver:
    """Solves A x = b over Z for many right-hand sides, reusing one SNF."""

    def __init__(self, A):
        self.m = len(A)
        self.n = len(A[0]) if self.m else 0
        self.U, _, self.S, self.V, _ = smith_normal_form_full(A)
        self.rank = rank_of_snf(self.S)

    def solve(self, b: list[int]) -> list[int] | None:
        """One integral solution of A x = b, or None if there is none."""
        if len(b) != self.m:
            raise ValidationError("right-hand side has wrong length")
        c = mat_vec(self.U, b)
        y = [0] * self.n
        for i in range(self.rank):
            d = self.S[i][i]
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
        if any(c[i] != 0 for i in range(self.rank, self.m)):
            return None
        return mat_vec(self.V, y)


def solve_integer(A, b):
    """Convenience wrapper: one integral solution of A x = b, or None."""
    return SnfSolver(A).solve(b)


def columns_to_matrix(cols: list[list[int]], nrows: int) -> list[list[int]]:
    return [[col[i] for col in cols] for i in range(nrows)]
