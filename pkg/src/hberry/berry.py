"""Higher Berry class of a family of MPS tensors over an oriented
triangulated 3-dimensional parameter space.

The vertices of the complex stand for cover patches, edges for double
overlaps and triangles for triple overlaps.  From a vertex field of
tensors we extract edge gauge unitaries, U(1) triangle phases lambda,
tetrahedral fluxes in (-pi, pi], and finally an integer 3-cocycle whose
class in H^3(K, Z) is the higher Berry class; its pairing with the
fundamental cycle is the higher Berry number.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from . import cohomology as coh
from .channel import MpsTensor, injectivity_length
from .complexes import SimplicialComplex, fundamental_cycle
from .errors import ComputationError, ValidationError

DEFAULT_ETA_MIN = 0.5
DEFAULT_DEV_MAX = 0.3
BRANCH_MARGIN = 1e-6 * np.pi
TWO_PI = 2 * np.pi


@dataclass
class TensorFamily:
    """A tensor per vertex of an oriented 3-complex (uniform dimensions)."""

    complex: SimplicialComplex
    tensors: dict[int, MpsTensor]

    def __post_init__(self):
        for v in range(self.complex.n_vertices):
            if v not in self.tensors:
                raise ValidationError(f"vertex {v} has no tensor")
        dims = {(t.phys_dim, t.bond_dim) for t in self.tensors.values()}
        if len(dims) != 1:
            raise ValidationError("tensors must share physical and bond dimension")

    def check_injective(self, n_max: int = 4):
        for v, t in self.tensors.items():
            if injectivity_length(t, n_max) is None:
                raise ValidationError(f"tensor at vertex {v} is not injective")


@dataclass
class GaugeData:
    """Overlap unitaries U_uv per oriented edge (u < v), with U_vu = U_uv†."""

    complex: SimplicialComplex
    unitaries: dict[tuple[int, int], np.ndarray]
    overlaps: dict[tuple[int, int], float] = field(default_factory=dict)

    def gauge(self, u: int, v: int) -> np.ndarray:
        if u < v:
            return self.unitaries[(u, v)]
        return self.unitaries[(v, u)].conj().T


@dataclass
class PhaseData:
    """Unit complex lambda per triangle, with the scalarity deviation."""

    complex: SimplicialComplex
    phases: dict[tuple[int, int, int], complex]
    deviations: dict[tuple[int, int, int], float] = field(default_factory=dict)


@dataclass
class BerryOutput:
    fluxes: dict[tuple[int, int, int, int], float]
    cocycle: list[int]
    number: int | None
    residual: float
    coordinates: coh.ClassCoordinates | None = None


# ---------------------------------------------------------------------------
# gauge extraction


def edge_gauge(
    t_u: MpsTensor,
    t_v: MpsTensor,
    eta_min: float = DEFAULT_ETA_MIN,
    gap_tol: float = 1e-6,
) -> tuple[float, np.ndarray]:
    """Overlap modulus eta and polar gauge unitary for an edge.

    Built from the mixed transfer map x -> sum_i T_i^{(u)} x (T_i^{(v)})†:
    eta is the modulus of its leading eigenvalue, U the polar unitary part
    of the leading eigen-matrix.  The phase of U is arbitrary."""
    if t_u.bond_dim != t_v.bond_dim or t_u.phys_dim != t_v.phys_dim:
        raise ValidationError("tensors must share dimensions")
    D = t_u.bond_dim
    M = sum(np.kron(Tu, Tv.conj()) for Tu, Tv in zip(t_u.kraus, t_v.kraus))
    vals, vecs = np.linalg.eig(M)
    order = np.argsort(-np.abs(vals))
    eta = float(abs(vals[order[0]]))
    if len(vals) > 1 and eta - abs(vals[order[1]]) < gap_tol:
        raise ComputationError("ambiguous gauge: leading eigenvalue not simple")
    if eta < eta_min:
        raise ComputationError(f"patches too far apart: overlap {eta:.3g}")
    m = vecs[:, order[0]].reshape(D, D)
    w, _, vh = np.linalg.svd(m)
    return eta, w @ vh


def gauge_data(
    family: TensorFamily,
    eta_min: float = DEFAULT_ETA_MIN,
) -> GaugeData:
    unitaries, overlaps = {}, {}
    for (u, v) in family.complex.simplices(1):
        eta, U = edge_gauge(family.tensors[u], family.tensors[v], eta_min)
        unitaries[(u, v)] = U
        overlaps[(u, v)] = eta
    return GaugeData(family.complex, unitaries, overlaps)


def triangle_phase(
    g: GaugeData, triangle: tuple[int, int, int]
) -> tuple[complex, float]:
    """lambda and deviation for one triangle: P = U_uv U_vw U_wu,
    lambda = Tr P / |Tr P|, dev = ||P - lambda 1|| / sqrt(D)."""
    u, v, w = triangle
    P = g.gauge(u, v) @ g.gauge(v, w) @ g.gauge(w, u)
    D = P.shape[0]
    tr = np.trace(P)
    if abs(tr) < 1e-12:
        raise ComputationError(f"no scalar part on triangle {triangle}")
    lam = tr / abs(tr)
    dev = float(np.linalg.norm(P - lam * np.eye(D), 2) / np.sqrt(D))
    return complex(lam), dev


def phase_data(g: GaugeData, dev_max: float = DEFAULT_DEV_MAX) -> PhaseData:
    phases, deviations = {}, {}
    for tri in g.complex.simplices(2):
        lam, dev = triangle_phase(g, tri)
        if dev > dev_max:
            raise ComputationError(
                f"triangle {tri} deviation {dev:.3g} exceeds {dev_max}"
            )
        phases[tri] = lam
        deviations[tri] = dev
    return PhaseData(g.complex, phases, deviations)


def family_phases(
    family: TensorFamily,
    eta_min: float = DEFAULT_ETA_MIN,
    dev_max: float = DEFAULT_DEV_MAX,
) -> PhaseData:
    family.check_injective()
    return phase_data(gauge_data(family, eta_min), dev_max)


# ---------------------------------------------------------------------------
# fluxes and classes


def _principal(x: float) -> float:
    """Reduce to (-pi, pi]."""
    y = (-x + np.pi) % TWO_PI
    return np.pi - y


def tet_flux(
    p: PhaseData,
    tet: tuple[int, int, int, int],
    margin: float = BRANCH_MARGIN,
) -> float:
    """Principal-valued coboundary of the triangle phase arguments."""
    u, v, w, x = tet
    args = [
        cmath.phase(p.phases[tri])
        for tri in ((v, w, x), (u, w, x), (u, v, x), (u, v, w))
    ]
    bracket = args[0] - args[1] + args[2] - args[3]
    G = _principal(bracket)
    if np.pi - abs(G) < margin:
        raise ComputationError(
            f"flux on branch cut at tetrahedron {tet}; refine the triangulation"
        )
    return float(G)


def _all_fluxes(p: PhaseData) -> dict[tuple[int, int, int, int], float]:
    return {tet: tet_flux(p, tet) for tet in p.complex.simplices(3)}


def _as_phase_data(f: "TensorFamily | PhaseData", **kw) -> PhaseData:
    if isinstance(f, PhaseData):
        return f
    return family_phases(f, **kw)


def berry_number(
    f: "TensorFamily | PhaseData",
    orientation: list[int] | None = None,
    quantization_tol: float = 1e-4,
) -> tuple[int, float]:
    """Rounded orientation-weighted flux sum over 2 pi, with its residual.

    The sign convention makes synthetic_family(K, target) return target."""
    p = _as_phase_data(f)
    K = p.complex
    if K.dim != 3:
        raise ValidationError("berry number needs a 3-dimensional complex")
    signs = orientation if orientation is not None else fundamental_cycle(K)
    fluxes = _all_fluxes(p)
    total = sum(s * fluxes[tet] for s, tet in zip(signs, K.simplices(3)))
    n = int(round(-total / TWO_PI))
    residual = abs(total + TWO_PI * n)
    if residual > quantization_tol:
        raise ComputationError(
            f"not quantized: flux sum off a 2 pi multiple by {residual:.3g}"
        )
    return n, float(residual)


def berry_class(
    p: PhaseData,
    integer_tol: float = 1e-6,
) -> BerryOutput:
    """Integer 3-cocycle c_T = ((delta arg lambda)_T - G_T) / 2 pi and its
    class in H^3(K, Z).  On an orientable K the free generator is oriented
    so that the free coordinate pairs with the fundamental cycle to the
    Berry number."""
    K = p.complex
    if K.dim != 3:
        raise ValidationError("berry class needs a 3-dimensional complex")
    fluxes = _all_fluxes(p)
    tri_index = K.index(2)
    b = [0.0] * K.n_simplices(2)
    for tri, lam in p.phases.items():
        b[tri_index[tuple(sorted(tri))]] = cmath.phase(lam)
    D3 = np.asarray(coh.coboundary_matrix(K, 2), dtype=float)
    delta_b = D3 @ np.asarray(b)
    tets = K.simplices(3)
    c = []
    for i, tet in enumerate(tets):
        raw = (delta_b[i] - fluxes[tet]) / TWO_PI
        ci = int(round(raw))
        if abs(raw - ci) > integer_tol:
            raise ComputationError(
                f"internal inconsistency: non-integer cocycle entry {raw:.3g}"
            )
        c.append(ci)
    group = coh.cohomology_group(K, 3, "Z")
    coords = coh.classify(K, 3, coh.Cochain(3, c), group)
    # orient the free generator to pair +1 with the fundamental cycle
    try:
        signs = fundamental_cycle(K)
    except ComputationError:
        signs = None
    number, residual = None, 0.0
    if signs is not None:
        if group.free_rank == 1:
            e = coh.evaluate(coh.Cochain(3, group.free_generators[0]), signs)
            if abs(e) == 1:
                coords = coh.ClassCoordinates(
                    free=[e * coords.free[0]], torsion=coords.torsion
                )
        number, residual = berry_number(p, orientation=signs)
    return BerryOutput(
        fluxes=fluxes,
        cocycle=c,
        number=number,
        residual=float(residual),
        coordinates=coords,
    )


# ---------------------------------------------------------------------------
# fixtures and perturbations


def synthetic_family(K: SimplicialComplex, target: int) -> PhaseData:
    """Phase data on a closed oriented 3-complex with Berry number target.

    A generator cocycle of the free part of H^3(K, Z) is normalized to
    pair +1 with the fundamental cycle; the flux budget -2 pi target is
    spread evenly over the top simplices and the remainder is solved for
    as a real 2-cochain coboundary, so the construction is consistent by
    design."""
    if K.dim != 3:
        raise ValidationError("synthetic family needs a 3-dimensional complex")
    signs = fundamental_cycle(K)
    group = coh.cohomology_group(K, 3, "Z")
    if group.free_rank == 0:
        raise ValidationError("H^3 has no free part; no integer flux to realize")
    gen = group.free_generators[0]
    e = coh.evaluate(coh.Cochain(3, gen), signs)
    if abs(e) != 1:
        raise ComputationError("free generator does not pair to a unit")
    n_hat = [e * g for g in gen]
    tets = K.simplices(3)
    N = len(tets)
    if abs(target) * TWO_PI / N >= np.pi - 10 * BRANCH_MARGIN:
        raise ValidationError("target too large for this triangulation")
    g = np.array([-TWO_PI * target * s / N for s in signs])
    rhs = g + TWO_PI * target * np.asarray(n_hat, dtype=float)
    b = coh.solve_real_coboundary(K, rhs, 2)
    phases = {
        tri: complex(cmath.rect(1.0, b[i]))
        for i, tri in enumerate(K.simplices(2))
    }
    deviations = {tri: 0.0 for tri in K.simplices(2)}
    return PhaseData(K, phases, deviations)


def constant_phases(K: SimplicialComplex) -> PhaseData:
    return PhaseData(
        K,
        {tri: 1.0 + 0.0j for tri in K.simplices(2)},
        {tri: 0.0 for tri in K.simplices(2)},
    )


def phases_from_mod2(K: SimplicialComplex, z: coh.Cochain) -> PhaseData:
    """lambda = (-1)^z for a mod-2 2-cocycle z: carries pure torsion."""
    vals = [v % 2 for v in z.values]
    phases = {
        tri: (-1.0 + 0.0j if vals[i] else 1.0 + 0.0j)
        for i, tri in enumerate(K.simplices(2))
    }
    return PhaseData(K, phases, {tri: 0.0 for tri in phases})


def gauge_perturb(
    data: "GaugeData | PhaseData", seed: int
) -> "GaugeData | PhaseData":
    """Multiply edge gauges by random phases (or the phases by the induced
    coboundary); all downstream invariants are unchanged."""
    rng = np.random.default_rng(seed)
    K = data.complex
    theta = {e: rng.uniform(-np.pi, np.pi) for e in K.simplices(1)}
    if isinstance(data, GaugeData):
        unitaries = {
            e: np.exp(1j * theta[e]) * U for e, U in data.unitaries.items()
        }
        return GaugeData(K, unitaries, dict(data.overlaps))
    phases = {}
    for tri, lam in data.phases.items():
        u, v, w = tri
        shift = theta[(u, v)] + theta[(v, w)] - theta[(u, w)]
        phases[tri] = lam * cmath.rect(1.0, shift)
    return PhaseData(K, phases, dict(data.deviations))
