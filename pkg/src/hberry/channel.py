"""Finite-dimensional generalized MPS tensors and their transfer channels.

Conventions (used everywhere in the package):
  * a tensor is the Kraus family {T_i}, one D x D matrix per physical
    basis state, and its channel acts in the Heisenberg picture,
    Phi(x) = sum_i T_i x T_i†;
  * "unital" means Phi(1) = 1, i.e. sum_i T_i T_i† = 1;
  * the adjoint acts on density operators, Phi†(k) = sum_i T_i† k T_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ComputationError, NotPrimitiveError, ValidationError

DEFAULT_TOL_ALG = 1e-10
DEFAULT_TOL_SPEC = 1e-8


def _as_kraus(matrices) -> list[np.ndarray]:
    kraus = [np.asarray(m, dtype=complex) for m in matrices]
    if not kraus:
        raise ValidationError("empty Kraus family")
    D = kraus[0].shape[0] if kraus[0].ndim == 2 else -1
    for m in kraus:
        if m.ndim != 2 or m.shape != (D, D):
            raise ValidationError("Kraus matrices must all be square of equal size")
        if not np.all(np.isfinite(m)):
            raise ValidationError("non-finite entry in Kraus matrix")
    return kraus


@dataclass
class MpsTensor:
    """Generalized MPS tensor: d Kraus matrices of size D x D."""

    kraus: list[np.ndarray]

    def __post_init__(self):
        self.kraus = _as_kraus(self.kraus)

    @property
    def phys_dim(self) -> int:
        return len(self.kraus)

    @property
    def bond_dim(self) -> int:
        return self.kraus[0].shape[0]

    def unitality_residual(self) -> float:
        D = self.bond_dim
        s = sum(T @ T.conj().T for T in self.kraus)
        return float(np.linalg.norm(s - np.eye(D), 2))

    def is_unital(self, tol: float = DEFAULT_TOL_ALG) -> bool:
        return self.unitality_residual() <= tol

    def conjugated(self, U: np.ndarray) -> "MpsTensor":
        """Gauge transform T_i -> U T_i U† (same physical state)."""
        U = np.asarray(U, dtype=complex)
        return MpsTensor([U @ T @ U.conj().T for T in self.kraus])


@dataclass
class QuantumChannel:
    """Unital CP map in Kraus form, Phi(x) = sum T_i x T_i†."""

    kraus: list[np.ndarray]
    unitality_residual: float = field(init=False)

    def __post_init__(self):
        self.kraus = _as_kraus(self.kraus)
        self.unitality_residual = MpsTensor(self.kraus).unitality_residual()

    @property
    def bond_dim(self) -> int:
        return self.kraus[0].shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.bond_dim, self.bond_dim):
            raise ValidationError("argument has wrong bond dimension")
        return sum(T @ x @ T.conj().T for T in self.kraus)

    def apply_adjoint(self, kappa: np.ndarray) -> np.ndarray:
        kappa = np.asarray(kappa, dtype=complex)
        if kappa.shape != (self.bond_dim, self.bond_dim):
            raise ValidationError("argument has wrong bond dimension")
        return sum(T.conj().T @ kappa @ T for T in self.kraus)

    def transfer_matrix(self) -> np.ndarray:
        """D^2 x D^2 matrix of Phi on row-major vectorized operators."""
        return sum(np.kron(T, T.conj()) for T in self.kraus)


@dataclass
class DensityOp:
    """Positive unit-trace operator on the bond space."""

    rho: np.ndarray

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=complex)
        if self.rho.ndim != 2 or self.rho.shape[0] != self.rho.shape[1]:
            raise ValidationError("density operator must be square")
        if np.linalg.norm(self.rho - self.rho.conj().T) > 1e-8:
            raise ValidationError("density operator not Hermitian")
        if abs(np.trace(self.rho) - 1.0) > 1e-8:
            raise ValidationError("density operator not unit trace")

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.rho)

    def is_faithful(self, tol: float = 1e-12) -> bool:
        return bool(self.eigenvalues()[0] > tol)


@dataclass
class Isometry:
    """V: V_bond -> P x V_bond with V†V = 1, stored as a (dD) x D matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        D = self.matrix.shape[1]
        if self.matrix.shape[0] % D != 0:
            raise ValidationError("isometry rows must be a multiple of columns")

    def residual(self) -> float:
        D = self.matrix.shape[1]
        return float(np.linalg.norm(self.matrix.conj().T @ self.matrix - np.eye(D), 2))


@dataclass
class Sfcs:
    """A transfer channel together with its stationary faithful state."""

    channel: QuantumChannel
    rho: DensityOp

    def stationarity_residual(self) -> float:
        return float(
            np.linalg.norm(self.channel.apply_adjoint(self.rho.rho) - self.rho.rho, 2)
        )


# ---------------------------------------------------------------------------
# constructors and conversions


def channel_from_tensor(t: MpsTensor) -> QuantumChannel:
    return QuantumChannel(list(t.kraus))


def isometry_of(t: MpsTensor, tol: float = DEFAULT_TOL_ALG) -> Isometry:
    """Stack the adjoint Kraus blocks into V, so that V†V = Phi(1) = 1 and
    Phi(x) = V†(1 x x)V with the block ordering of the physical basis."""
    if not t.is_unital(tol):
        raise ValidationError("tensor is not unital within tolerance")
    V = np.vstack([T.conj().T for T in t.kraus])
    return Isometry(V)


def tensor_of(v: Isometry, tol: float = DEFAULT_TOL_ALG) -> MpsTensor:
    if v.residual() > tol:
        raise ValidationError("matrix is not an isometry within tolerance")
    D = v.matrix.shape[1]
    d = v.matrix.shape[0] // D
    return MpsTensor([v.matrix[i * D:(i + 1) * D].conj().T for i in range(d)])


def aklt_tensor() -> MpsTensor:
    """Spin-1 AKLT fixed-point tensor (d=3, D=2), unital by construction."""
    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    sm = np.array([[0, 0], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return MpsTensor(
        [np.sqrt(2 / 3) * sp, -np.sqrt(1 / 3) * sz, -np.sqrt(2 / 3) * sm]
    )


def unitary_conjugation_tensor(U: np.ndarray) -> MpsTensor:
    """d=1 tensor whose channel is Ad_U."""
    return MpsTensor([np.asarray(U, dtype=complex)])


def random_unitary(D: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_unital_tensor(d: int, D: int, rng: np.random.Generator) -> MpsTensor:
    """Unital tensor from the blocks of a Haar-random (dD) x D isometry."""
    z = rng.normal(size=(d * D, D)) + 1j * rng.normal(size=(d * D, D))
    q, _ = np.linalg.qr(z)
    return tensor_of(Isometry(q))


def random_density(D: int, rng: np.random.Generator) -> DensityOp:
    z = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
    rho = z @ z.conj().T + 0.1 * np.eye(D)
    return DensityOp(rho / np.trace(rho).real)


# ---------------------------------------------------------------------------
# diagnostics


def transfer_spectrum(c: QuantumChannel) -> tuple[np.ndarray, float]:
    """Eigenvalues of the transfer matrix by descending modulus, and the
    gap 1 - |lambda_2|."""
    eigs = np.linalg.eigvals(c.transfer_matrix())
    eigs = eigs[np.argsort(-np.abs(eigs))]
    gap = 1.0 - abs(eigs[1]) if len(eigs) > 1 else 1.0
    return eigs, float(gap)


def stationary_state(
    c: QuantumChannel, tol_spec: float = DEFAULT_TOL_SPEC
) -> DensityOp:
    """The unique stationary density operator of a primitive unital channel."""
    M = c.transfer_matrix()
    vals = np.linalg.eigvals(M)
    peripheral = np.sum(np.abs(vals) >= 1.0 - tol_spec)
    if peripheral != 1:
        raise NotPrimitiveError(
            f"not primitive: {peripheral} peripheral eigenvalues"
        )
    # the eigenvector of eig() can be poor for non-normal transfer
    # matrices; the null space of Phi† - id is robust
    D = c.bond_dim
    A = M.conj().T - np.eye(D * D)
    _, svals, vh = np.linalg.svd(A)
    if svals[-1] > 1e-6:
        raise ComputationError("no stationary state within tolerance")
    rho = vh[-1].conj().reshape(D, D)
    rho = (rho + rho.conj().T) / 2
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise ComputationError("stationary eigenvector has zero trace")
    rho = rho / tr
    lo = np.linalg.eigvalsh(rho)[0]
    if lo < -1e-9:
        raise ComputationError("stationary fixed point is not positive")
    return DensityOp(rho)


def make_sfcs(t: MpsTensor, tol_spec: float = DEFAULT_TOL_SPEC) -> Sfcs:
    c = channel_from_tensor(t)
    return Sfcs(channel=c, rho=stationary_state(c, tol_spec))


def injectivity_length(t: MpsTensor, n_max: int = 4, tol: float = 1e-10):
    """Smallest n with span{T_i1 ... T_in} = all D x D matrices, or None
    if no n <= n_max works.  D = 1 returns 1 by convention."""
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    D = t.bond_dim
    if D == 1:
        return 1
    products = [np.eye(D, dtype=complex)]
    for n in range(1, n_max + 1):
        products = [T @ P for P in products for T in t.kraus]
        A = np.array([P.reshape(-1) for P in products])
        svals = np.linalg.svd(A, compute_uv=False)
        if np.sum(svals > tol) == D * D:
            return n
    return None


def expectation(
    s: Sfcs, ops: list[np.ndarray], tol: float = DEFAULT_TOL_ALG
) -> complex:
    """omega(O_1 x ... x O_n) for single-site operators on consecutive sites."""
    if s.stationarity_residual() > max(tol, 1e-8):
        raise ValidationError("state is not stationary within tolerance")
    kraus = s.channel.kraus
    d = len(kraus)
    D = s.channel.bond_dim
    x = np.eye(D, dtype=complex)
    for O in reversed(ops):
        O = np.asarray(O, dtype=complex)
        if O.shape != (d, d):
            raise ValidationError("operator does not act on the physical space")
        x = sum(
            O[i, j] * (kraus[i] @ x @ kraus[j].conj().T)
            for i in range(d)
            for j in range(d)
        )
    return complex(np.trace(s.rho.rho @ x))


def two_point(s: Sfcs, A: np.ndarray, B: np.ndarray, r: int) -> complex:
    """omega(A x 1^{r-1} x B): sites separated by distance r."""
    if r < 1:
        raise ValidationError("separation must be >= 1")
    kraus = s.channel.kraus
    d = len(kraus)
    D = s.channel.bond_dim
    A, B = np.asarray(A, dtype=complex), np.asarray(B, dtype=complex)
    x = sum(
        B[i, j] * (kraus[i] @ np.eye(D) @ kraus[j].conj().T)
        for i in range(d)
        for j in range(d)
    )
    for _ in range(r - 1):
        x = s.channel.apply(x)
    x = sum(
        A[i, j] * (kraus[i] @ x @ kraus[j].conj().T)
        for i in range(d)
        for j in range(d)
    )
    return complex(np.trace(s.rho.rho @ x))


@dataclass
class SplitPurityReport:
    peripheral_spectrum: np.ndarray
    distance: float
    converging: bool


def rank_one_limit_matrix(rho: DensityOp) -> np.ndarray:
    """Transfer matrix of x -> Tr[rho x] * 1 (the RG fixed-point channel)."""
    D = rho.dim
    return np.outer(np.eye(D, dtype=complex).reshape(-1), rho.rho.conj().reshape(-1))


def check_split_purity(
    c: QuantumChannel, N: int, tol_spec: float = DEFAULT_TOL_SPEC
) -> SplitPurityReport:
    """Distance of Phi^N from x -> Tr[rho x] 1, in the transfer 2-norm."""
    M = c.transfer_matrix()
    eigs, _ = transfer_spectrum(c)
    peripheral = eigs[np.abs(eigs) >= 1.0 - tol_spec]
    if len(peripheral) != 1:
        return SplitPurityReport(peripheral, float("inf"), False)
    rho = stationary_state(c, tol_spec)
    L = rank_one_limit_matrix(rho)
    dist = float(np.linalg.norm(np.linalg.matrix_power(M, N) - L, 2))
    return SplitPurityReport(peripheral, dist, True)
