import pytest

from hberry.errors import ValidationError
from hberry.tduality import (
    BasePresentation,
    GroupSpec,
    TDualPair,
    gysin_h3,
    name_total_space,
    pushforward,
    rp2_base,
    surface,
    tdualize,
    verify_duality,
)


def s2():
    return surface(0)


# --- group specs and bases -------------------------------------------------------


def test_group_spec_reduce():
    g = GroupSpec(1, [4])
    assert g.reduce([3, 7]) == (3, 3)
    assert g.describe() == "Z + Z/4"
    with pytest.raises(ValidationError):
        g.reduce([1])


def test_surface_bases():
    assert s2().h(2).describe() == "Z"
    assert surface(2).h(1).describe() == "Z + Z + Z + Z"
    with pytest.raises(ValidationError):
        surface(-1)


def test_gysin_surface_collapse():
    # H^3 = H^4 = 0 on a surface: coker trivial, ker = H^2 for every c1
    for n in range(4):
        g = gysin_h3(s2(), [n])
        assert g.coker.is_trivial()
        assert g.ker.describe() == "Z"
        assert g.ker_basis is None
    assert gysin_h3(s2(), [1]).describe() == "Z"


def test_gysin_rp2_base():
    g = gysin_h3(rp2_base(), [1])
    assert g.coker.is_trivial()
    assert g.ker.describe() == "Z/2"


# --- naming ------------------------------------------------------------------------


def test_name_total_space():
    assert name_total_space(s2(), (0,)) == "S2xS1"
    assert name_total_space(s2(), (1,)) == "S3"
    assert name_total_space(s2(), (-1,)) == "S3"
    assert name_total_space(s2(), (5,)) == "L(5;1)"


# --- dualization ---------------------------------------------------------------------


def test_s3_unit_flux_self_dual():
    pair = TDualPair(s2(), (1,), (1,))
    dual = tdualize(pair)
    assert dual.c1 == (1,)
    assert dual.h_ker == (1,)
    assert verify_duality(pair, dual).ok


def test_s3_zero_flux_dual_to_s2xs1():
    pair = TDualPair(s2(), (1,), (0,))
    dual = tdualize(pair)
    assert name_total_space(pair.base, pair.c1) == "S3"
    assert name_total_space(dual.base, dual.c1) == "S2xS1"
    assert dual.h_ker == (1,)
    assert verify_duality(pair, dual).ok


def test_lens_rule_and_involution():
    # (L(n;1), m) <-> (L(m;1), n) over S^2
    for n in range(6):
        for m in range(6):
            pair = TDualPair(s2(), (n,), (m,))
            dual = tdualize(pair)
            assert dual.c1 == (m,)
            assert dual.h_ker == (n,)
            assert verify_duality(pair, dual).ok
            back = tdualize(dual)
            assert back.coordinates() == pair.coordinates()


def test_pushforward_is_ker_component():
    pair = TDualPair(s2(), (3,), (7,))
    assert pushforward(pair) == (7,)


def test_higher_genus_base():
    sigma = surface(1)
    pair = TDualPair(sigma, (2,), (5,))
    dual = tdualize(pair)
    assert dual.c1 == (5,) and dual.h_ker == (2,)
    assert verify_duality(pair, dual).ok


def test_rp2_torsion_duality():
    base = rp2_base()
    for c1 in (0, 1):
        for h in (0, 1):
            pair = TDualPair(base, (c1,), (h,))
            dual = tdualize(pair)
            assert dual.c1 == (h % 2,)
            assert dual.h_ker == (c1 % 2,)
            assert verify_duality(pair, dual).ok


def test_coordinates_reduced_on_construction():
    pair = TDualPair(rp2_base(), (3,), (-1,))
    assert pair.c1 == (1,)
    assert pair.h_ker == (1,)


def test_verify_rejects_mixed_bases():
    a = TDualPair(s2(), (1,), (1,))
    b = TDualPair(rp2_base(), (1,), (1,))
    with pytest.raises(ValidationError):
        verify_duality(a, b)


def test_verify_detects_non_dual():
    a = TDualPair(s2(), (2,), (3,))
    b = TDualPair(s2(), (2,), (3,))  # not the dual of a
    assert not verify_duality(a, b).ok


def test_custom_base_with_cup_map():
    # a T^3-like presentation: H^* = (Z, Z^3, Z^3, Z, 0) with the cup
    # product H^2 x H^2(e) -> H^4 trivial (H^4 = 0) and
    # e cup: H^1 -> H^3 given by the pairing tensor of the 3-torus
    cup1 = [[[1 if (b + c) % 3 != 0 and b != c else 0 for c in range(3)]
             for b in range(3)]]
    base = BasePresentation(
        "T3-like",
        [GroupSpec(1), GroupSpec(3), GroupSpec(3), GroupSpec(1), GroupSpec()],
        cup1=cup1,
    )
    g = gysin_h3(base, [0, 0, 0])
    assert g.coker.describe() == "Z"
    assert g.ker.describe() == "Z + Z + Z"
    g = gysin_h3(base, [1, 0, 0])
    # e cup maps onto H^3 here, so the coker dies
    assert g.coker.is_trivial()
    # the ker of the (zero) H^2 -> H^4 map is everything
    assert g.ker.n_coords == 3
