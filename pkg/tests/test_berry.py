import cmath

import numpy as np
import pytest

from hberry.berry import (
    PhaseData,
    TensorFamily,
    berry_class,
    berry_number,
    constant_phases,
    edge_gauge,
    family_phases,
    gauge_data,
    gauge_perturb,
    phases_from_mod2,
    synthetic_family,
    tet_flux,
    triangle_phase,
)
from hberry.channel import (
    MpsTensor,
    aklt_tensor,
    random_unitary,
    unitary_conjugation_tensor,
)
from hberry.cli import bockstein_fixture
from hberry.cohomology import Cochain, classify, cohomology_group
from hberry.complexes import (
    from_top_simplices,
    fundamental_cycle,
    product_complex,
    real_projective_plane,
    sphere,
    circle,
)
from hberry.errors import ComputationError, ValidationError


def small_unitary(D, rng, scale=0.1):
    h = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
    h = (h + h.conj().T) / 2
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * scale * w)) @ v.conj().T


def conjugated_family(K, rng, scale=0.1):
    t0 = aklt_tensor()
    return TensorFamily(
        K,
        {
            v: t0.conjugated(small_unitary(2, rng, scale))
            for v in range(K.n_vertices)
        },
    )


# --- tensor families ---------------------------------------------------------


def test_family_requires_all_vertices(aklt):
    K = sphere(3)
    with pytest.raises(ValidationError):
        TensorFamily(K, {0: aklt})


def test_family_requires_uniform_dims(aklt):
    K = sphere(3)
    tensors = {v: aklt for v in range(5)}
    tensors[2] = MpsTensor([np.eye(2)])
    with pytest.raises(ValidationError):
        TensorFamily(K, tensors)


def test_check_injective(rng):
    K = sphere(3)
    U = random_unitary(2, rng)
    fam = TensorFamily(
        K, {v: unitary_conjugation_tensor(U) for v in range(5)}
    )
    with pytest.raises(ValidationError):
        fam.check_injective()


# --- edge gauges ---------------------------------------------------------------


def test_edge_gauge_identity(aklt):
    eta, U = edge_gauge(aklt, aklt)
    assert eta == pytest.approx(1.0, abs=1e-10)
    assert np.linalg.norm(U.conj().T @ U - np.eye(2)) <= 1e-10


def test_edge_gauge_tracks_conjugation(aklt, rng):
    # oracle: for T and Q T Q† the mixed transfer is conjugation by Q on
    # one side, so the polar gauge is Q† up to a phase
    Q = small_unitary(2, rng)
    eta, U = edge_gauge(aklt, aklt.conjugated(Q))
    assert eta == pytest.approx(1.0, abs=1e-10)
    W = U @ Q
    phase = np.trace(W) / abs(np.trace(W))
    assert np.linalg.norm(W - phase * np.eye(2)) <= 1e-8


def test_edge_gauge_requires_overlap(aklt, rng):
    # a far-away tensor: permute the physical index against itself
    far = MpsTensor([aklt.kraus[2], aklt.kraus[0], aklt.kraus[1]])
    with pytest.raises(ComputationError):
        edge_gauge(aklt, far, eta_min=0.99)


def test_edge_gauge_dimension_mismatch(aklt):
    with pytest.raises(ValidationError):
        edge_gauge(aklt, MpsTensor([np.eye(3)] * 3))


def test_gauge_antisymmetry(rng):
    K = sphere(3)
    g = gauge_data(conjugated_family(K, rng))
    for (u, v) in K.simplices(1):
        assert np.linalg.norm(g.gauge(v, u) - g.gauge(u, v).conj().T) == 0.0


# --- triangle phases -------------------------------------------------------------


def test_triangle_phases_near_one_for_smooth_family(rng):
    K = sphere(3)
    p = family_phases(conjugated_family(K, rng, scale=0.05))
    for tri, lam in p.phases.items():
        assert abs(abs(lam) - 1.0) <= 1e-12
        assert p.deviations[tri] <= 0.05


def test_triangle_phase_pure_phases():
    K = sphere(3)
    rng = np.random.default_rng(3)
    theta = {e: rng.uniform(-1, 1) for e in K.simplices(1)}
    unitaries = {e: np.exp(1j * theta[e]) * np.eye(2) for e in K.simplices(1)}
    from hberry.berry import GaugeData

    g = GaugeData(K, unitaries)
    for tri in K.simplices(2):
        u, v, w = tri
        lam, dev = triangle_phase(g, tri)
        want = cmath.exp(1j * (theta[(u, v)] + theta[(v, w)] - theta[(u, w)]))
        assert lam == pytest.approx(want, abs=1e-12)
        assert dev <= 1e-12


# --- fluxes ------------------------------------------------------------------------


def test_flux_branch_cut_raises():
    K = from_top_simplices(4, [(0, 1, 2, 3)])
    phases = {tri: 1.0 + 0.0j for tri in K.simplices(2)}
    phases[(0, 1, 2)] = -1.0 + 0.0j
    with pytest.raises(ComputationError):
        tet_flux(PhaseData(K, phases), (0, 1, 2, 3))


def test_flux_of_small_phases_is_exact_coboundary():
    K = sphere(3)
    rng = np.random.default_rng(1)
    b = {tri: rng.uniform(-0.1, 0.1) for tri in K.simplices(2)}
    p = PhaseData(K, {tri: cmath.rect(1.0, b[tri]) for tri in b})
    for tet in K.simplices(3):
        u, v, w, x = tet
        want = b[(v, w, x)] - b[(u, w, x)] + b[(u, v, x)] - b[(u, v, w)]
        assert tet_flux(p, tet) == pytest.approx(want, abs=1e-12)


# --- berry number and class ---------------------------------------------------------


@pytest.mark.parametrize("target", [-2, -1, 0, 1, 2])
def test_synthetic_targets(target):
    K = sphere(3)
    p = synthetic_family(K, target)
    n, residual = berry_number(p)
    assert n == target
    assert residual <= 1e-6


def test_synthetic_on_product_space():
    K = product_complex(sphere(2), circle())
    n, residual = berry_number(synthetic_family(K, 1))
    assert n == 1
    assert residual <= 1e-6


def test_orientation_reversal_negates():
    K = sphere(3)
    signs = fundamental_cycle(K)
    p = synthetic_family(K, 2)
    n_plus, _ = berry_number(p, orientation=signs)
    n_minus, _ = berry_number(p, orientation=[-s for s in signs])
    assert n_plus == 2 and n_minus == -2


def test_gauge_perturbation_invariance():
    K = sphere(3)
    p = synthetic_family(K, 1)
    for seed in range(20):
        n, residual = berry_number(gauge_perturb(p, seed))
        assert n == 1
        assert residual <= 1e-8


def test_constant_phases_trivial():
    K = sphere(3)
    out = berry_class(constant_phases(K))
    assert out.number == 0
    assert out.coordinates.is_zero()
    assert all(c == 0 for c in out.cocycle)


def test_constant_aklt_family_trivial(aklt):
    K = sphere(3)
    fam = TensorFamily(K, {v: aklt for v in range(5)})
    out = berry_class(family_phases(fam))
    assert out.number == 0
    assert out.coordinates.is_zero()


def test_conjugated_family_trivial(rng):
    K = sphere(3)
    n, residual = berry_number(family_phases(conjugated_family(K, rng)))
    assert n == 0
    assert residual <= 1e-8


def test_berry_class_free_coordinate_matches_number():
    K = sphere(3)
    for target in (-1, 0, 2):
        out = berry_class(synthetic_family(K, target))
        assert out.number == target
        assert out.coordinates.free == [target]
        assert out.coordinates.torsion == []


def test_berry_class_cocycle_is_cocycle():
    from hberry.cohomology import is_cocycle

    K = sphere(3)
    out = berry_class(synthetic_family(K, 1))
    assert is_cocycle(K, Cochain(3, out.cocycle))


def test_torsion_class_from_bockstein_fixture():
    K, z = bockstein_fixture()
    p = phases_from_mod2(K, z)
    out = berry_class(p)
    assert out.number is None  # RP^2 x S^1 is non-orientable
    assert out.coordinates.free == []
    assert out.coordinates.torsion == [1]
    # oracle: the class equals the integral Bockstein of z
    from hberry.cohomology import bockstein_z2

    g3 = cohomology_group(K, 3)
    beta = classify(K, 3, bockstein_z2(K, z), g3)
    assert out.coordinates.torsion == beta.torsion


def test_doubled_mod2_class_trivial():
    K, z = bockstein_fixture()
    doubled = Cochain(2, [2 * v for v in z.values], ring=("Zp", 2))
    out = berry_class(phases_from_mod2(K, doubled))
    assert out.coordinates.is_zero()


def test_torsion_class_gauge_invariant():
    K, z = bockstein_fixture()
    p = phases_from_mod2(K, z)
    for seed in (5, 6, 7):
        out = berry_class(gauge_perturb(p, seed))
        assert out.coordinates.torsion == [1]


def test_berry_number_requires_3d():
    with pytest.raises(ValidationError):
        berry_number(constant_phases(real_projective_plane()))


def test_synthetic_rejects_nonorientable():
    # the fundamental cycle (and the free part of H^3) does not exist here
    K = product_complex(real_projective_plane(), circle())
    with pytest.raises(ComputationError):
        synthetic_family(K, 1)


def test_synthetic_rejects_huge_target():
    with pytest.raises(ValidationError):
        synthetic_family(sphere(3), 10**6)
