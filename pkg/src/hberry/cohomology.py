"""Simplicial cochain machinery: coboundaries, integral/mod-p/real
cohomology groups with explicit generator cocycles, classification of
cocycles in the computed basis, the integral Bockstein of mod-2 cocycles,
and a real coboundary solver.

Integral computations are exact (Smith normal form over Python ints);
mod-p computations use Gaussian elimination over GF(p); the real ring
only supports ranks and least-squares solves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import snf
from .complexes import SimplicialComplex
from .errors import ComputationError, ValidationError


def coboundary_matrix(K: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of delta: C^k -> C^{k+1} with the alternating-sign face rule.

    Rows are (k+1)-simplices, columns are k-simplices, both in the
    complex's canonical (sorted) order.  For k = dim K the matrix has no
    rows, representing the zero map.
    """
    if k < 0 or k > K.dim:
        raise ValidationError(f"cochain level {k} out of range for dim {K.dim}")
    cols = K.index(k)
    rows = K.simplices(k + 1)
    D = [[0] * len(cols) for _ in rows]
    for ri, s in enumerate(rows):
        for j in range(k + 2):
            f = s[:j] + s[j + 1:]
            D[ri][cols[f]] = (-1) ** j
    return D


@dataclass
class Cochain:
    """A k-cochain: one value per k-simplex in canonical order.

    ring is 'Z', ('Zp', p) or 'R'; values is a plain list (ints for the
    first two rings, floats for 'R').
    """

    level: int
    values: list
    ring: object = "Z"

    def modulus(self):
        return self.ring[1] if isinstance(self.ring, tuple) else None


def is_cocycle(K: SimplicialComplex, c: Cochain, tol: float = 1e-9) -> bool:
    D = coboundary_matrix(K, c.level)
    if not D:
        return True
    if c.ring == "R":
        r = np.asarray(D, dtype=float) @ np.asarray(c.values, dtype=float)
        return bool(np.max(np.abs(r)) <= tol) if r.size else True
    g = snf.mat_vec(D, list(c.values))
    p = c.modulus()
    if p is not None:
        return all(v % p == 0 for v in g)
    return all(v == 0 for v in g)


# ---------------------------------------------------------------------------
# abelian groups with generators


@dataclass
class AbelianGroup:
    """H^k as Z^free_rank + sum of Z/d_i, with generator cocycles.

    torsion_generators[i] generates the Z/invariant_factors[i] summand;
    free_generators span the free part.  The private fields carry the
    change of basis needed to classify arbitrary cocycles.
    """

    free_rank: int
    invariant_factors: list[int]
    torsion_generators: list[list[int]] = field(repr=False, default_factory=list)
    free_generators: list[list[int]] = field(repr=False, default_factory=list)
    ring: object = "Z"
    _kernel_solver: object = field(repr=False, default=None)
    _row_transform: list[list[int]] = field(repr=False, default=None)
    _all_factors: list[int] = field(repr=False, default_factory=list)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def _integral_group(K: SimplicialComplex, k: int) -> AbelianGroup:
    A = coboundary_matrix(K, k)
    n_k = K.n_simplices(k)
    kernel_cols = snf.kernel_basis(A) if A else [
        [1 if i == j else 0 for i in range(n_k)] for j in range(n_k)
    ]
    z = len(kernel_cols)
    Kmat = snf.columns_to_matrix(kernel_cols, n_k)
    solver = snf.SnfSolver(Kmat) if z else None
    # image of delta_{k-1} in kernel coordinates
    if k > 0 and z > 0:
        B = coboundary_matrix(K, k - 1)
        img_cols = []
        for j in range(K.n_simplices(k - 1)):
            col = [B[i][j] for i in range(n_k)]
            y = solver.solve(col)
            if y is None:
                raise ComputationError("coboundary image escaped the cocycle lattice")
            img_cols.append(y)
    else:
        img_cols = []
    Y = snf.columns_to_matrix(img_cols, z) if img_cols else [[] for _ in range(z)]
    if img_cols:
        P, Pinv, D, _, _ = snf.smith_normal_form_full(Y)
        factors = snf.diagonal(D)
    else:
        P, Pinv = snf.identity_matrix(z), snf.identity_matrix(z)
        factors = []
    factors = factors + [0] * (z - len(factors))
    # generator cocycles: columns of Kmat * Pinv
    gen_matrix = snf.mat_mul(Kmat, Pinv) if z else [[] for _ in range(n_k)]
    torsion_gens, tors = [], []
    free_gens = []
    for i, d in enumerate(factors):
        col = [gen_matrix[r][i] for r in range(n_k)]
        if d == 0:
            free_gens.append(col)
        elif d > 1:
            tors.append(d)
            torsion_gens.append(col)
    return AbelianGroup(
        free_rank=len(free_gens),
        invariant_factors=tors,
        torsion_generators=torsion_gens,
        free_generators=free_gens,
        ring="Z",
        _kernel_solver=solver,
        _row_transform=P,
        _all_factors=factors,
    )


# ---------------------------------------------------------------------------
# GF(p) elimination helpers


def _gf_rref(M: list[list[int]], p: int):
    """Row-reduce M over GF(p); returns (reduced rows, pivot column list)."""
    M = [[x % p for x in row] for row in M]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if M[i][c] % p != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] % p != 0:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def _gf_kernel(M: list[list[int]], p: int, ncols: int) -> list[list[int]]:
    R, pivots = _gf_rref(M, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-R[r][fc]) % p
        basis.append(v)
    return basis


def _gf_solve(M: list[list[int]], b: list[int], p: int) -> list[int] | None:
    ncols = len(M[0]) if M else 0
    aug = [row + [bv] for row, bv in zip(M, b)]
    R, pivots = _gf_rref(aug, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][ncols] % p
    return x


def _modp_group(K: SimplicialComplex, k: int, p: int) -> AbelianGroup:
    A = coboundary_matrix(K, k)
    n_k = K.n_simplices(k)
    kernel = _gf_kernel(A, p, n_k) if A else [
        [1 if i == j else 0 for i in range(n_k)] for j in range(n_k)
    ]
    B = coboundary_matrix(K, k - 1) if k > 0 else []
    img = [[B[i][j] for i in range(n_k)] for j in range(len(B[0]))] if B and B[0] else []
    # select kernel vectors independent modulo the image, by incremental
    # reduction against a growing echelon basis
    echelon: list[tuple[int, list[int]]] = []  # (pivot position, reduced vector)

    def reduce_mod(v):
        v = [x % p for x in v]
        for pos, w in echelon:
            if v[pos] % p:
                f = v[pos]
                v = [(a - f * b) % p for a, b in zip(v, w)]
        return v

    def insert(v) -> bool:
        v = reduce_mod(v)
        pos = next((i for i, x in enumerate(v) if x % p), None)
        if pos is None:
            return False
        inv = pow(v[pos], -1, p)
        echelon.append((pos, [(x * inv) % p for x in v]))
        return True

    for col in img:
        insert(col)
    gens = [v for v in kernel if insert(v)]
    return AbelianGroup(
        free_rank=0,
        invariant_factors=[p] * len(gens),
        torsion_generators=gens,
        free_generators=[],
        ring=("Zp", p),
        _kernel_solver=img,  # reused as the image columns for classify
    )


def cohomology_group(K: SimplicialComplex, k: int, ring: object = "Z") -> AbelianGroup:
    """H^k(K; ring) with explicit generator cocycles."""
    if k < 0 or k > K.dim:
        return AbelianGroup(0, [])
    if ring == "Z":
        return _integral_group(K, k)
    if isinstance(ring, tuple) and ring[0] == "Zp":
        return _modp_group(K, k, ring[1])
    if ring == "R":
        A = np.asarray(coboundary_matrix(K, k), dtype=float)
        n_k = K.n_simplices(k)
        rank_d = np.linalg.matrix_rank(A) if A.size else 0
        z = n_k - rank_d
        if k > 0:
            B = np.asarray(coboundary_matrix(K, k - 1), dtype=float)
            rank_b = np.linalg.matrix_rank(B) if B.size else 0
        else:
            rank_b = 0
        return AbelianGroup(free_rank=z - rank_b, invariant_factors=[], ring="R")
    raise ValidationError(f"unsupported coefficient ring {ring!r}")


@dataclass
class ClassCoordinates:
    """Coordinates of a cohomology class in the computed generator basis."""

    free: list[int]
    torsion: list[int]

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)


def classify(
    K: SimplicialComplex, k: int, c: Cochain, group: AbelianGroup | None = None
) -> ClassCoordinates:
    """Coordinates of [c] in the generator basis of H^k; zero iff c is a
    coboundary."""
    if not is_cocycle(K, c):
        raise ValidationError("not a cocycle")
    if group is None:
        group = cohomology_group(K, k, c.ring)
    if group.ring != c.ring:
        raise ValidationError("cochain ring does not match group ring")
    if isinstance(c.ring, tuple):
        p = c.modulus()
        img = group._kernel_solver or []
        cols = img + group.torsion_generators
        M = snf.columns_to_matrix(cols, K.n_simplices(k))
        x = _gf_solve(M, [v % p for v in c.values], p)
        if x is None:
            raise ComputationError("cocycle not representable in computed basis")
        return ClassCoordinates(free=[], torsion=x[len(img):])
    solver = group._kernel_solver
    if solver is None:
        return ClassCoordinates(free=[], torsion=[])
    x = solver.solve(list(c.values))
    if x is None:
        raise ValidationError("not a cocycle")
    y = snf.mat_vec(group._row_transform, x)
    free, torsion = [], []
    for i, d in enumerate(group._all_factors):
        if d == 0:
            free.append(y[i])
        elif d > 1:
            torsion.append(y[i] % d)
    return ClassCoordinates(free=free, torsion=torsion)


def bockstein_z2(
    K: SimplicialComplex, z: Cochain, lift_offset: list[int] | None = None
) -> Cochain:
    """Integral Bockstein of a mod-2 k-cocycle, as an integer (k+1)-cocycle.

    Lifts z to an integer cochain (entries 0/1, shifted by an optional
    even offset), applies delta and divides by 2.  Different lifts change
    the result by an integer coboundary only.
    """
    if z.ring != ("Zp", 2):
        raise ValidationError("bockstein_z2 expects a mod-2 cochain")
    if not is_cocycle(K, z):
        raise ValidationError("not a mod-2 cocycle")
    lift = [v % 2 for v in z.values]
    if lift_offset is not None:
        lift = [a + 2 * b for a, b in zip(lift, lift_offset)]
    D = coboundary_matrix(K, z.level)
    w = snf.mat_vec(D, lift)
    if any(v % 2 for v in w):
        raise ComputationError("coboundary of the lift is not even")
    return Cochain(level=z.level + 1, values=[v // 2 for v in w], ring="Z")


def evaluate(c: Cochain, cycle_signs: list[int], top_values=None):
    """Pair a top-level cochain with a fundamental cycle (signed sum)."""
    vals = c.values if top_values is None else top_values
    if len(vals) != len(cycle_signs):
        raise ValidationError("cochain/cycle length mismatch")
    return sum(s * v for s, v in zip(cycle_signs, vals))


def solve_real_coboundary(
    K: SimplicialComplex, g: np.ndarray, k: int, tol: float = 1e-9
) -> np.ndarray:
    """A real k-cochain h with delta h = g, where g is a (k+1)-cochain.

    Uses least squares; raises if g is not exact within tol.
    """
    D = np.asarray(coboundary_matrix(K, k), dtype=float)
    g = np.asarray(g, dtype=float)
    if D.shape[0] != g.shape[0]:
        raise ValidationError("cochain length does not match complex")
    h, *_ = np.linalg.lstsq(D, g, rcond=None)
    if np.max(np.abs(D @ h - g)) > tol:
        raise ComputationError("not exact: no real coboundary solution")
    return h
