"""Generalized MPS transfer channels, their RG flow, higher Berry classes
of tensor families, exact simplicial cohomology, and topological T-duality.
"""

from .channel import (
    DensityOp,
    Isometry,
    MpsTensor,
    QuantumChannel,
    Sfcs,
    aklt_tensor,
    channel_from_tensor,
    check_split_purity,
    expectation,
    injectivity_length,
    isometry_of,
    make_sfcs,
    stationary_state,
    tensor_of,
    transfer_spectrum,
    two_point,
)
from .complexes import (
    SimplicialComplex,
    circle,
    fundamental_cycle,
    product_complex,
    real_projective_plane,
    sphere,
)
from .rg import FixedPointData, block, compress, fixed_tensor, rg_flow
from .errors import (
    ComputationError,
    NoConvergenceError,
    NotPrimitiveError,
    ValidationError,
)

__all__ = [
    "DensityOp",
    "Isometry",
    "MpsTensor",
    "QuantumChannel",
    "Sfcs",
    "SimplicialComplex",
    "FixedPointData",
    "aklt_tensor",
    "block",
    "channel_from_tensor",
    "check_split_purity",
    "circle",
    "compress",
    "expectation",
    "fixed_tensor",
    "fundamental_cycle",
    "injectivity_length",
    "isometry_of",
    "make_sfcs",
    "product_complex",
    "real_projective_plane",
    "rg_flow",
    "sphere",
    "stationary_state",
    "tensor_of",
    "transfer_spectrum",
    "two_point",
    "ComputationError",
    "NoConvergenceError",
    "NotPrimitiveError",
    "ValidationError",
]
