"""Command-line interface.

Subcommands: channel info, rg run, berry number|class, coh groups|bockstein,
tdual run|verify, examples <name>.  Exit codes: 0 success, 1 computational
failure (e.g. a non-primitive channel), 2 validation failure (malformed
input).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import berry, cohomology as coh, complexes, fileio, rg, tduality
from .channel import (
    aklt_tensor,
    channel_from_tensor,
    check_split_purity,
    injectivity_length,
    make_sfcs,
    stationary_state,
    transfer_spectrum,
)
from .errors import ComputationError, ValidationError


@dataclass
class RunConfig:
    tol_alg: float = 1e-10
    tol_spec: float = 1e-8
    dev_max: float = berry.DEFAULT_DEV_MAX
    eta_min: float = berry.DEFAULT_ETA_MIN
    max_iter: int = 20
    seed: int = 0
    output: str = "text"

    def __post_init__(self):
        if min(self.tol_alg, self.tol_spec, self.dev_max, self.eta_min) <= 0:
            raise ValidationError("tolerances must be positive")


def _emit(report: dict, cfg: RunConfig):
    if cfg.output == "json":
        json.dump(report, sys.stdout, indent=1, default=str)
        print()
    else:
        for key, val in report.items():
            print(f"{key}: {val}")


def _fmt_complexes(values) -> list:
    return [[float(z.real), float(z.imag)] for z in values]


# --- subcommand handlers ----------------------------------------------------


def cmd_channel_info(args, cfg: RunConfig):
    t = fileio.load_tensor(args.path)
    c = channel_from_tensor(t)
    eigs, gap = transfer_spectrum(c)
    rho = stationary_state(c, cfg.tol_spec)
    report = {
        "phys_dim": t.phys_dim,
        "bond_dim": t.bond_dim,
        "unitality_residual": c.unitality_residual,
        "transfer_spectrum": _fmt_complexes(eigs),
        "gap": gap,
        "injectivity_length": injectivity_length(t),
        "stationary_spectrum": [float(x) for x in rho.eigenvalues()],
    }
    _emit(report, cfg)


def cmd_rg(args, cfg: RunConfig):
    t = fileio.load_tensor(args.path)
    data = rg.rg_flow(t, tol=cfg.tol_spec, max_iter=cfg.max_iter)
    report = {
        "phys_dim": data.phys_dim,
        "iterations": data.iterations,
        "residual": data.residual,
        "rho_spectrum": [float(x) for x in data.rho.eigenvalues()],
        "rho": [[list(map(float, (z.real, z.imag))) for z in row] for row in data.rho.rho],
    }
    _emit(report, cfg)


def _load_phase_input(args, cfg: RunConfig) -> berry.PhaseData:
    if args.family:
        fam = fileio.load_family(args.path)
        return berry.family_phases(fam, eta_min=cfg.eta_min, dev_max=cfg.dev_max)
    return fileio.load_phases(args.path)


def cmd_berry_number(args, cfg: RunConfig):
    p = _load_phase_input(args, cfg)
    n, residual = berry.berry_number(p)
    _emit({"berry_number": n, "residual": residual}, cfg)


def cmd_berry_class(args, cfg: RunConfig):
    p = _load_phase_input(args, cfg)
    out = berry.berry_class(p)
    report = {
        "berry_number": out.number,
        "residual": out.residual,
        "free_coordinates": out.coordinates.free,
        "torsion_coordinates": out.coordinates.torsion,
    }
    _emit(report, cfg)


def cmd_coh_groups(args, cfg: RunConfig):
    K = fileio.load_complex(args.path)
    report = {}
    for k in range(K.dim + 1):
        report[f"H^{k}"] = coh.cohomology_group(K, k, "Z").describe()
    _emit(report, cfg)


def cmd_coh_bockstein(args, cfg: RunConfig):
    data = fileio._load_json(args.path)
    K = fileio.complex_from_dict(data["complex"])
    try:
        raw = data["cochain"]
        idx = K.index(2)
        values = [0] * K.n_simplices(2)
        for key, val in raw.items():
            tri = tuple(int(x) for x in key.split(","))
            values[idx[tri]] = int(val)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed mod-2 cochain: {exc}") from exc
    z = coh.Cochain(2, values, ("Zp", 2))
    c = coh.bockstein_z2(K, z)
    coords = coh.classify(K, 3, c)
    _emit(
        {
            "free_coordinates": coords.free,
            "torsion_coordinates": coords.torsion,
            "zero_class": coords.is_zero(),
        },
        cfg,
    )


def cmd_tdual_run(args, cfg: RunConfig):
    pair = fileio.load_pair(args.path)
    dual = tduality.tdualize(pair)
    check = tduality.verify_duality(pair, dual)
    report = {
        "input": fileio.pair_to_dict(
            pair, tduality.name_total_space(pair.base, pair.c1)
        ),
        "dual": fileio.pair_to_dict(
            dual, tduality.name_total_space(dual.base, dual.c1)
        ),
        "verified": check.ok,
    }
    _emit(report, cfg)


def cmd_tdual_verify(args, cfg: RunConfig):
    a = fileio.load_pair(args.path)
    b = fileio.load_pair(args.other)
    check = tduality.verify_duality(a, b)
    _emit(
        {
            "verified": check.ok,
            "c1_vs_push": check.c1_vs_push,
            "c1_dual_vs_push": check.c1_dual_vs_push,
            "coker_agree": check.coker_agree,
        },
        cfg,
    )
    if not check.ok:
        raise ComputationError("pairs are not T-dual")


# --- fixture generators -----------------------------------------------------


def _write_json(obj, path: str):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
    print(path)


def cmd_examples(args, cfg: RunConfig):
    name = args.name
    out = args.output or f"{name}.json"
    if name == "aklt":
        fileio.save_tensor(aklt_tensor(), out)
        print(out)
    elif name == "fixed-point":
        rng = np.random.default_rng(cfg.seed)
        from .channel import random_density

        rho = random_density(args.bond_dim, rng)
        fileio.save_tensor(rg.fixed_tensor(rho), out)
        print(out)
    elif name == "constant-family":
        K = complexes.sphere(3)
        fam = berry.TensorFamily(
            K, {v: aklt_tensor() for v in range(K.n_vertices)}
        )
        fileio.save_family(fam, out)
        print(out)
    elif name == "synthetic-s3":
        K = complexes.sphere(3)
        p = berry.synthetic_family(K, args.target)
        fileio.save_phases(p, out)
        print(out)
    elif name == "bockstein-rp2xs1":
        K, z = bockstein_fixture()
        p = berry.phases_from_mod2(K, z)
        fileio.save_phases(p, out)
        print(out)
    elif name == "tdual-table":
        s2 = tduality.surface(0)
        pairs = [
            tduality.TDualPair(s2, (1,), (1,)),
            tduality.TDualPair(s2, (1,), (0,)),
            tduality.TDualPair(s2, (0,), (0,)),
        ]
        _write_json(
            [
                fileio.pair_to_dict(p, tduality.name_total_space(p.base, p.c1))
                for p in pairs
            ],
            out,
        )
    else:
        raise ValidationError(f"unknown example {name!r}")


def bockstein_fixture() -> tuple[complexes.SimplicialComplex, coh.Cochain]:
    """RP^2 x S^1 together with a mod-2 2-cocycle whose integral Bockstein
    generates the Z/2 of H^3.  Selected from the mod-2 H^2 generators by
    direct computation, so the fixture is self-validating."""
    K = complexes.product_complex(complexes.real_projective_plane(), complexes.circle())
    group2 = coh.cohomology_group(K, 2, ("Zp", 2))
    gens = group2.torsion_generators
    for mask in range(1, 2 ** len(gens)):
        vals = [0] * K.n_simplices(2)
        for gi, g in enumerate(gens):
            if mask >> gi & 1:
                vals = [(a + b) % 2 for a, b in zip(vals, g)]
        z = coh.Cochain(2, vals, ("Zp", 2))
        c = coh.bockstein_z2(K, z)
        if not coh.classify(K, 3, c).is_zero():
            return K, z
    raise ComputationError("no mod-2 class with nonzero Bockstein found")


# --- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hberry")
    ap.add_argument("--tol-alg", type=float, default=1e-10)
    ap.add_argument("--tol-spec", type=float, default=1e-8)
    ap.add_argument("--dev-max", type=float, default=berry.DEFAULT_DEV_MAX)
    ap.add_argument("--eta-min", type=float, default=berry.DEFAULT_ETA_MIN)
    ap.add_argument("--max-iter", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=["text", "json"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p_channel = sub.add_parser("channel").add_subparsers(dest="sub", required=True)
    p = p_channel.add_parser("info")
    p.add_argument("path")
    p.set_defaults(func=cmd_channel_info)

    p_rg = sub.add_parser("rg").add_subparsers(dest="sub", required=True)
    p = p_rg.add_parser("run")
    p.add_argument("path")
    p.set_defaults(func=cmd_rg)

    p_berry = sub.add_parser("berry").add_subparsers(dest="sub", required=True)
    for name, fn in [("number", cmd_berry_number), ("class", cmd_berry_class)]:
        p = p_berry.add_parser(name)
        p.add_argument("path")
        p.add_argument("--family", action="store_true", help="input is a tensor family")
        p.set_defaults(func=fn)

    p_coh = sub.add_parser("coh").add_subparsers(dest="sub", required=True)
    p = p_coh.add_parser("groups")
    p.add_argument("path")
    p.set_defaults(func=cmd_coh_groups)
    p = p_coh.add_parser("bockstein")
    p.add_argument("path")
    p.set_defaults(func=cmd_coh_bockstein)

    p_tdual = sub.add_parser("tdual").add_subparsers(dest="sub", required=True)
    p = p_tdual.add_parser("run")
    p.add_argument("path")
    p.set_defaults(func=cmd_tdual_run)
    p = p_tdual.add_parser("verify")
    p.add_argument("path")
    p.add_argument("other")
    p.set_defaults(func=cmd_tdual_verify)

    p = sub.add_parser("examples")
    p.add_argument(
        "name",
        choices=[
            "aklt",
            "fixed-point",
            "constant-family",
            "synthetic-s3",
            "bockstein-rp2xs1",
            "tdual-table",
        ],
    )
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--bond-dim", type=int, default=2)
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            tol_alg=args.tol_alg,
            tol_spec=args.tol_spec,
            dev_max=args.dev_max,
            eta_min=args.eta_min,
            max_iter=args.max_iter,
            seed=args.seed,
            output=args.format,
        )
        args.func(args, cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
