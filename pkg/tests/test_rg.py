import numpy as np
import pytest

from hberry.channel import (
    DensityOp,
    MpsTensor,
    channel_from_tensor,
    make_sfcs,
    random_density,
    random_unital_tensor,
    random_unitary,
    rank_one_limit_matrix,
    stationary_state,
    unitary_conjugation_tensor,
)
from hberry.errors import NoConvergenceError, NotPrimitiveError, ValidationError
from hberry.rg import block, compress, fixed_tensor, rg_flow


def transfer(t):
    return channel_from_tensor(t).transfer_matrix()


# --- blocking ------------------------------------------------------------------


def test_block_squares_transfer(aklt, rng):
    b = block(aklt)
    assert b.phys_dim == 9
    M = transfer(aklt)
    assert np.linalg.norm(transfer(b) - M @ M) <= 1e-12
    t = random_unital_tensor(2, 3, rng)
    M = transfer(t)
    assert np.linalg.norm(transfer(block(t)) - M @ M) <= 1e-12


def test_block_preserves_unitality(rng):
    t = random_unital_tensor(3, 4, rng)
    assert block(t).unitality_residual() <= 1e-12


# --- compression ------------------------------------------------------------------


def test_compress_preserves_channel(aklt, rng):
    b = block(aklt)
    c = compress(b)
    assert c.phys_dim <= 4  # rank of vec'd Kraus family is at most D^2
    assert np.linalg.norm(transfer(c) - transfer(b)) <= 1e-10
    t = block(random_unital_tensor(3, 2, rng))
    c = compress(t)
    assert np.linalg.norm(transfer(c) - transfer(t)) <= 1e-10
    assert c.unitality_residual() <= 1e-10


def test_compress_idempotent_dimension(aklt):
    c = compress(block(aklt))
    assert compress(c).phys_dim == c.phys_dim


# --- fixed tensors ------------------------------------------------------------------


def test_fixed_tensor_channel_form(rng):
    for D in (2, 3, 5):
        rho = random_density(D, rng)
        t = fixed_tensor(rho)
        assert t.phys_dim == D * D
        c = channel_from_tensor(t)
        for _ in range(10):
            x = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
            want = np.trace(rho.rho @ x) * np.eye(D)
            assert np.linalg.norm(c.apply(x) - want) <= 1e-12
            k = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
            want = np.trace(k) * rho.rho
            assert np.linalg.norm(c.apply_adjoint(k) - want) <= 1e-12


def test_fixed_tensor_stationary_state(rng):
    rho = random_density(4, rng)
    got = stationary_state(channel_from_tensor(fixed_tensor(rho)))
    assert np.linalg.norm(got.rho - rho.rho) <= 1e-10


def test_fixed_tensor_rejects_unfaithful():
    with pytest.raises(ValidationError):
        fixed_tensor(DensityOp(np.diag([1.0, 0.0]).astype(complex)))


def test_fixed_tensor_one_step_rg(rng):
    # one blocking + compression step maps the fixed tensor to an equivalent one
    rho = random_density(3, rng)
    t = fixed_tensor(rho)
    c = compress(block(t))
    assert np.linalg.norm(transfer(c) - transfer(t) @ transfer(t)) <= 1e-10
    got = stationary_state(channel_from_tensor(c))
    assert np.linalg.norm(got.rho - rho.rho) <= 1e-10


# --- flow -------------------------------------------------------------------------


def test_fixed_tensor_is_rank_one_limit(rng):
    rho = random_density(3, rng)
    c = channel_from_tensor(fixed_tensor(rho))
    assert np.linalg.norm(c.transfer_matrix() - rank_one_limit_matrix(rho), 2) <= 1e-12


def test_aklt_flow(aklt):
    fp = rg_flow(aklt, tol=1e-8, max_iter=16)
    assert np.linalg.norm(fp.rho.rho - np.eye(2) / 2) <= 1e-8
    assert fp.phys_dim == 4
    assert fp.iterations <= 8
    assert fp.residual <= 1e-8


def test_fixed_point_flow_converges_immediately(rng):
    for D in (2, 3, 5, 8):
        rho = random_density(D, rng)
        fp = rg_flow(fixed_tensor(rho), tol=1e-8, max_iter=4)
        assert fp.iterations <= 1
        assert np.linalg.norm(fp.rho.rho - rho.rho) <= 1e-8


def test_flow_matches_stationary_state(rng):
    for _ in range(5):
        t = random_unital_tensor(2, 3, rng)
        fp = rg_flow(t, tol=1e-8, max_iter=40)
        rho = make_sfcs(t).rho
        assert np.linalg.norm(fp.rho.rho - rho.rho) <= 1e-7


def test_flow_iteration_count_tracks_gap(aklt):
    # residual after n steps is ~ gap^(2^n): 1/3 -> needs ~5 doublings for 1e-8
    fp = rg_flow(aklt, tol=1e-8, max_iter=16)
    assert 3 <= fp.iterations <= 8


def test_flow_rejects_nonprimitive(rng):
    U = random_unitary(2, rng)
    with pytest.raises(NotPrimitiveError):
        rg_flow(unitary_conjugation_tensor(U), tol=1e-8, max_iter=8)


def test_flow_raises_on_budget(aklt):
    with pytest.raises(NoConvergenceError):
        rg_flow(aklt, tol=1e-14, max_iter=1)


def test_noisy_aklt_flows_to_same_phase(aklt, rng):
    # a small unital perturbation (unitary rotation of the Kraus family)
    # flows to a rank-one fixed point with full-rank rho
    W = random_unitary(3, rng)
    kraus = [
        sum(W[i, j] * aklt.kraus[j] for j in range(3)) for i in range(3)
    ]
    fp = rg_flow(MpsTensor(kraus), tol=1e-8, max_iter=16)
    assert np.linalg.norm(fp.rho.rho - np.eye(2) / 2) <= 1e-8
