"""JSON file formats for tensors, complexes, phase data, families and
T-dual pairs.

Complex numbers are stored as [re, im] pairs throughout.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .berry import PhaseData, TensorFamily
from .channel import MpsTensor
from .complexes import SimplicialComplex
from .errors import ValidationError
from .tduality import BUILTIN_BASES, BasePresentation, GroupSpec, TDualPair


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _c2pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _pair2c(v) -> complex:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ValidationError(f"expected [re, im] pair, got {v!r}")
    return complex(v[0], v[1])


# --- tensors ---------------------------------------------------------------


def tensor_to_dict(t: MpsTensor) -> dict:
    return {
        "phys_dim": t.phys_dim,
        "bond_dim": t.bond_dim,
        "kraus": [[[_c2pair(z) for z in row] for row in T] for T in t.kraus],
    }


def tensor_from_dict(data: dict) -> MpsTensor:
    try:
        kraus = [
            np.array([[_pair2c(z) for z in row] for row in T]) for T in data["kraus"]
        ]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed tensor data: {exc}") from exc
    t = MpsTensor(kraus)
    if t.phys_dim != data.get("phys_dim", t.phys_dim):
        raise ValidationError("phys_dim does not match Kraus list length")
    if t.bond_dim != data.get("bond_dim", t.bond_dim):
        raise ValidationError("bond_dim does not match Kraus matrix size")
    return t


def load_tensor(path: str) -> MpsTensor:
    return tensor_from_dict(_load_json(path))


def save_tensor(t: MpsTensor, path: str):
    with open(path, "w") as fh:
        json.dump(tensor_to_dict(t), fh, indent=1)


# --- complexes -------------------------------------------------------------


def complex_to_dict(K: SimplicialComplex) -> dict:
    return {
        "vertices": K.n_vertices,
        "simplices": {
            str(k): [list(s) for s in K.simplices(k)] for k in range(1, K.dim + 1)
        },
    }


def complex_from_dict(data: dict) -> SimplicialComplex:
    try:
        n = int(data["vertices"])
        simplices = {
            int(k): [tuple(s) for s in v] for k, v in data["simplices"].items()
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed complex data: {exc}") from exc
    return SimplicialComplex(n, simplices)


def load_complex(path: str) -> SimplicialComplex:
    return complex_from_dict(_load_json(path))


# --- phase data ------------------------------------------------------------


def phases_to_dict(p: PhaseData) -> dict:
    return {
        "complex": complex_to_dict(p.complex),
        "phases": {
            ",".join(map(str, tri)): _c2pair(lam) for tri, lam in p.phases.items()
        },
        "deviations": {
            ",".join(map(str, tri)): dev for tri, dev in p.deviations.items()
        },
    }


def phases_from_dict(data: dict) -> PhaseData:
    K = complex_from_dict(data["complex"])
    phases, deviations = {}, {}
    try:
        for key, val in data["phases"].items():
            tri = tuple(int(x) for x in key.split(","))
            lam = _pair2c(val)
            if abs(abs(lam) - 1.0) > 1e-6:
                raise ValidationError(f"phase on {tri} is not unit modulus")
            phases[tri] = lam / abs(lam)
            deviations[tri] = float(data.get("deviations", {}).get(key, 0.0))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"malformed phase data: {exc}") from exc
    missing = set(K.simplices(2)) - set(phases)
    if missing:
        raise ValidationError(f"missing phases for triangles {sorted(missing)[:3]}")
    return PhaseData(K, phases, deviations)


def load_phases(path: str) -> PhaseData:
    return phases_from_dict(_load_json(path))


def save_phases(p: PhaseData, path: str):
    with open(path, "w") as fh:
        json.dump(phases_to_dict(p), fh, indent=1)


# --- tensor families -------------------------------------------------------


def family_to_dict(f: TensorFamily) -> dict:
    return {
        "complex": complex_to_dict(f.complex),
        "tensors": {str(v): tensor_to_dict(t) for v, t in f.tensors.items()},
    }


def family_from_dict(data: dict, base_dir: str = ".") -> TensorFamily:
    cdata = data["complex"]
    if isinstance(cdata, str):
        K = load_complex(os.path.join(base_dir, cdata))
    else:
        K = complex_from_dict(cdata)
    tensors = {}
    try:
        for key, val in data["tensors"].items():
            if isinstance(val, str):
                tensors[int(key)] = load_tensor(os.path.join(base_dir, val))
            else:
                tensors[int(key)] = tensor_from_dict(val)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed family data: {exc}") from exc
    return TensorFamily(K, tensors)


def load_family(path: str) -> TensorFamily:
    return family_from_dict(_load_json(path), base_dir=os.path.dirname(path) or ".")


def save_family(f: TensorFamily, path: str):
    with open(path, "w") as fh:
        json.dump(family_to_dict(f), fh, indent=1)


# --- T-dual pairs ----------------------------------------------------------


def base_from_data(data) -> BasePresentation:
    if isinstance(data, str):
        if data not in BUILTIN_BASES:
            raise ValidationError(f"unknown base {data!r}")
        return BUILTIN_BASES[data]()
    try:
        groups = [
            GroupSpec(g.get("free", 0), list(g.get("torsion", [])))
            for g in data["groups"]
        ]
        return BasePresentation(
            data.get("name", "custom"),
            groups,
            cup1=data.get("cup1"),
            cup2=data.get("cup2"),
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed base presentation: {exc}") from exc


def pair_from_dict(data: dict) -> TDualPair:
    base = base_from_data(data["base"])
    try:
        c1 = tuple(int(x) for x in data["c1"])
        h = data.get("H", {})
        ker = tuple(int(x) for x in h.get("ker", []))
        coker = tuple(int(x) for x in h.get("coker", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed pair data: {exc}") from exc
    return TDualPair(base=base, c1=c1, h_ker=ker, h_coker=coker)


def load_pair(path: str) -> TDualPair:
    return pair_from_dict(_load_json(path))


def pair_to_dict(pair: TDualPair, total_space: str | None = None) -> dict:
    out = {
        "base": pair.base.name,
        "c1": list(pair.c1),
        "H": {"ker": list(pair.h_ker), "coker": list(pair.h_coker)},
        "ambiguous_lift": pair.ambiguous_lift,
    }
    if total_space is not None:
        out["total_space"] = total_space
    return out


def save_pair(pair: TDualPair, path: str, total_space: str | None = None):
    with open(path, "w") as fh:
        json.dump(pair_to_dict(pair, total_space), fh, indent=1)
