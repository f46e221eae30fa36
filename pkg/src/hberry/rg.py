"""Real-space renormalization of transfer channels.

One RG step is Phi -> Phi o Phi at the channel level: `block` realizes it
on Kraus families, `compress` removes the redundant physical directions
that blocking creates, and `rg_flow` iterates to the rank-one fixed point
F(x) = Tr[rho x] 1, whose canonical tensor `fixed_tensor` materializes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import (
    DEFAULT_TOL_SPEC,
    DensityOp,
    MpsTensor,
    channel_from_tensor,
    rank_one_limit_matrix,
    stationary_state,
)
from .errors import NoConvergenceError, ValidationError

DEFAULT_COMPRESS_TOL = 1e-12


@dataclass
class FixedPointData:
    rho: DensityOp
    phys_dim: int
    iterations: int
    residual: float


def block(t: MpsTensor) -> MpsTensor:
    """Kraus family {T_i T_j}: the channel of the result is Phi o Phi."""
    return MpsTensor([Ti @ Tj for Ti in t.kraus for Tj in t.kraus])


def compress(t: MpsTensor, tol: float = DEFAULT_COMPRESS_TOL) -> MpsTensor:
    """Orthonormal recombination of the Kraus family.

    The family is viewed as vectors in the D^2-dimensional matrix space;
    a unitary on the physical index rotates it so that the directions
    carrying zero singular weight can be dropped.  The channel is
    unchanged up to the discarded weight.
    """
    D = t.bond_dim
    A = np.array([T.reshape(-1) for T in t.kraus])
    u, svals, vh = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(svals > tol))
    if rank == 0:
        raise ValidationError("all-zero tensor cannot be compressed")
    rows = (u.conj().T @ A)[:rank]
    return MpsTensor([row.reshape(D, D) for row in rows])


def fixed_tensor(rho: DensityOp) -> MpsTensor:
    """Canonical RG fixed-point tensor of a faithful rho: Kraus family
    {e_ij rho^{1/2}} over matrix units, whose channel is x -> Tr[rho x] 1."""
    if not rho.is_faithful():
        raise ValidationError("rho must be faithful (strictly positive)")
    w, v = np.linalg.eigh(rho.rho)
    sqrt_rho = (v * np.sqrt(w)) @ v.conj().T
    D = rho.dim
    kraus = []
    for i in range(D):
        for j in range(D):
            e = np.zeros((D, D), dtype=complex)
            e[i, j] = 1.0
            kraus.append(e @ sqrt_rho)
    return MpsTensor(kraus)


def rg_flow(
    t: MpsTensor,
    tol: float = DEFAULT_TOL_SPEC,
    max_iter: int = 20,
    compress_tol: float = DEFAULT_COMPRESS_TOL,
) -> FixedPointData:
    """Iterate compress(block(.)) until the channel is within tol of the
    rank-one limit.  Raises NotPrimitiveError for degenerate peripheral
    spectrum and NoConvergenceError after max_iter steps.

    The returned rho is the stationary state of the *input* channel
    (blocking preserves it)."""
    rho0 = stationary_state(channel_from_tensor(t))
    current = t
    for k in range(1, max_iter + 1):
        current = compress(block(current), compress_tol)
        c = channel_from_tensor(current)
        rho = stationary_state(c)
        residual = float(
            np.linalg.norm(c.transfer_matrix() - rank_one_limit_matrix(rho), 2)
        )
        if residual <= tol:
            return FixedPointData(
                rho=rho0,
                phys_dim=current.phys_dim,
                iterations=k,
                residual=residual,
            )
    raise NoConvergenceError(f"no convergence after {max_iter} RG iterations")
