"""Topological T-duality of (circle bundle, H-class) pairs via the Gysin
sequence, with exact integer arithmetic.

A pair is (base, c1, H) where c1 lives in H^2(base) and H in H^3 of the
total space, presented through the extension
    0 -> coker(c1 cup .: H^1 -> H^3) -> H^3(M) -> ker(c1 cup .: H^2 -> H^4) -> 0.
The dual swaps c1 with the push-forward of H.  For the built-in surface
bases H^3 = H^4 = 0, the sequence collapses, the push-forward is an
isomorphism onto H^2(base) and the dual pair is unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import snf
from .errors import ValidationError


@dataclass
class GroupSpec:
    """Finitely generated abelian group in coordinates: Z^free + sum Z/d_i."""

    free_rank: int = 0
    invariant_factors: list[int] = field(default_factory=list)

    @property
    def n_coords(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    def reduce(self, coords: list[int]) -> tuple[int, ...]:
        if len(coords) != self.n_coords:
            raise ValidationError("wrong number of coordinates")
        out = list(coords[: self.free_rank])
        for d, v in zip(self.invariant_factors, coords[self.free_rank:]):
            out.append(v % d)
        return tuple(out)

    def is_trivial(self) -> bool:
        return self.n_coords == 0

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


@dataclass
class BasePresentation:
    """Base space data: cohomology in degrees 0..4 and the cup-with-e maps.

    cup1 and cup2 are structure tensors: cup1[a][b][c] is the H^3
    coefficient a of (generator c of H^2) cup (generator b of H^1), so
    M1(e)_{ab} = sum_c cup1[a][b][c] e_c, and likewise cup2 for
    H^2 -> H^4.  For the built-in surface bases both tensors vanish
    because H^3 = H^4 = 0.
    """

    name: str
    groups: list[GroupSpec]  # H^0 .. H^4
    cup1: list | None = None
    cup2: list | None = None

    def h(self, k: int) -> GroupSpec:
        return self.groups[k]

    def m1(self, e: list[int]) -> list[list[int]]:
        return self._cup_map(self.cup1, self.h(1), self.h(3), e)

    def m2(self, e: list[int]) -> list[list[int]]:
        return self._cup_map(self.cup2, self.h(2), self.h(4), e)

    @staticmethod
    def _cup_map(tensor, src: GroupSpec, dst: GroupSpec, e: list[int]):
        rows, cols = dst.n_coords, src.n_coords
        if tensor is None:
            return [[0] * cols for _ in range(rows)]
        return [
            [sum(tensor[a][b][c] * e[c] for c in range(len(e))) for b in range(cols)]
            for a in range(rows)
        ]


def surface(genus: int) -> BasePresentation:
    """Closed orientable surface of genus g."""
    if genus < 0:
        raise ValidationError("genus must be nonnegative")
    name = "S2" if genus == 0 else f"Sigma_{genus}"
    return BasePresentation(
        name,
        [GroupSpec(1), GroupSpec(2 * genus), GroupSpec(1), GroupSpec(), GroupSpec()],
    )


def rp2_base() -> BasePresentation:
    return BasePresentation(
        "RP2",
        [GroupSpec(1), GroupSpec(), GroupSpec(0, [2]), GroupSpec(), GroupSpec()],
    )


BUILTIN_BASES = {"S2": lambda: surface(0), "RP2": rp2_base}


@dataclass
class GysinPresentation:
    """H^3 of the total space as an extension of ker by coker.

    ker_basis, when not None, expresses the ker generators as integer
    columns in H^2(base) coordinates (None means the identity)."""

    base: BasePresentation
    c1: tuple[int, ...]
    coker: GroupSpec
    ker: GroupSpec
    ker_basis: list[list[int]] | None = None

    def describe(self) -> str:
        if self.coker.is_trivial():
            return self.ker.describe()
        return f"extension of {self.ker.describe()} by {self.coker.describe()}"


@dataclass
class TDualPair:
    base: BasePresentation
    c1: tuple[int, ...]
    h_ker: tuple[int, ...]
    h_coker: tuple[int, ...] = ()
    ambiguous_lift: bool = False

    def __post_init__(self):
        self.c1 = self.base.h(2).reduce(list(self.c1))
        gysin = gysin_h3(self.base, list(self.c1))
        self.h_ker = gysin.ker.reduce(list(self.h_ker))
        self.h_coker = gysin.coker.reduce(list(self.h_coker))

    def coordinates(self) -> tuple:
        return (self.base.name, self.c1, self.h_ker, self.h_coker)


def _coker_spec(M: list[list[int]], dst: GroupSpec) -> GroupSpec:
    """Cokernel of an integer matrix into a free group Z^rows."""
    if dst.invariant_factors:
        if any(any(row) for row in M):
            raise ValidationError(
                "cup-product maps into torsion groups are not supported"
            )
        return dst
    rows = dst.n_coords
    if rows == 0:
        return GroupSpec()
    if not M or not M[0]:
        return GroupSpec(rows)
    _, S, _ = snf.smith_normal_form(M)
    diag = snf.diagonal(S)
    tors = [d for d in diag if d > 1]
    rank = sum(1 for d in diag if d != 0)
    return GroupSpec(rows - rank, tors)


def _ker_spec(M: list[list[int]], src: GroupSpec):
    """Kernel of an integer matrix out of src (free or with trivial map)."""
    if any(any(row) for row in M):
        if src.invariant_factors:
            raise ValidationError(
                "cup-product maps out of torsion groups are not supported"
            )
        basis = snf.kernel_basis(M)
        return GroupSpec(len(basis)), basis
    return src, None


def gysin_h3(base: BasePresentation, c1: list[int]) -> GysinPresentation:
    """ker/coker of the cup-with-c1 maps; for surface bases this is just
    H^3(total) = H^2(base) with the push-forward as the isomorphism."""
    c1 = list(base.h(2).reduce(c1))
    m1 = base.m1(c1)
    m2 = base.m2(c1)
    coker = _coker_spec(m1, base.h(3))
    ker, ker_basis = _ker_spec(m2, base.h(2))
    return GysinPresentation(base, tuple(c1), coker, ker, ker_basis)


def pushforward(pair: TDualPair) -> tuple[int, ...]:
    """pi_* H: the ker-component of H, landing in H^2(base)."""
    gysin = gysin_h3(pair.base, list(pair.c1))
    if gysin.ker_basis is None:
        return pair.base.h(2).reduce(list(pair.h_ker))
    coords = [
        sum(col[i] * v for col, v in zip(gysin.ker_basis, pair.h_ker))
        for i in range(pair.base.h(2).n_coords)
    ]
    return pair.base.h(2).reduce(coords)


def tdualize(pair: TDualPair) -> TDualPair:
    """The T-dual pair: c1_dual = pi_* H, H_dual the canonical lift of c1
    with zero coker-component (flagged when the lift is ambiguous)."""
    c1_dual = pushforward(pair)
    gysin_dual = gysin_h3(pair.base, list(c1_dual))
    if gysin_dual.ker.n_coords != len(pair.c1):
        raise ValidationError("c1 does not match the dual ker presentation")
    return TDualPair(
        base=pair.base,
        c1=c1_dual,
        h_ker=pair.c1,
        h_coker=tuple([0] * gysin_dual.coker.n_coords),
        ambiguous_lift=not gysin_dual.coker.is_trivial(),
    )


def name_total_space(base: BasePresentation, c1: tuple[int, ...]) -> str:
    if base.name == "S2":
        n = abs(c1[0])
        if n == 0:
            return "S2xS1"
        if n == 1:
            return "S3"
        return f"L({n};1)"
    return f"total space over {base.name} with c1={list(c1)}"


@dataclass
class DualityReport:
    ok: bool
    c1_vs_push: bool
    c1_dual_vs_push: bool
    coker_agree: bool


def verify_duality(a: TDualPair, b: TDualPair) -> DualityReport:
    """Check both push-forward relations (and coker agreement when both
    coker components exist)."""
    if a.base.name != b.base.name:
        raise ValidationError("pairs must share a base")
    r1 = pushforward(b) == a.c1
    r2 = pushforward(a) == b.c1
    coker_agree = True
    if a.h_coker and b.h_coker:
        coker_agree = a.h_coker == b.h_coker
    return DualityReport(r1 and r2 and coker_agree, r1, r2, coker_agree)
