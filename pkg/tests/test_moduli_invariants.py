from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from instantonfix.moduli_invariants import (
    ONE, SL2_FACTOR, TODD_P3, ChowClass, IntPoly, ch_line_bundle, ch_line_sheaf, chi,
    component_lower_bound, component_split, delta_formula_c1, euler_char_vanishing, euler_pairing,
    exp_hyperplane, pairing_demo, partition_count, partition_count_euler, partition_count_recursive,
    poincare_claim, poincare_poly_c1, projective_space_poly, refined_component_count_c3, twisted_chi,
)
from instantonfix.young_monomial import partitions_of

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
classes = st.builds(ChowClass, small, small, small, small)


def test_partition_count_examples():
    assert [partition_count(c) for c in range(0, 7)] == [1, 1, 2, 3, 5, 7, 11]
    assert partition_count(10) == 42
    assert partition_count(50) == 204226
    with pytest.raises(ValueError):
        partition_count(-1)


def test_partition_count_methods_agree():
    for c in range(0, 51):
        assert partition_count_recursive(c) == partition_count_euler(c)
    for c in range(1, 13):
        assert partition_count(c) == sum(1 for _ in partitions_of(c))


def test_component_bounds():
    assert component_lower_bound(2) == 2 and component_lower_bound(3) == 3
    assert [str(nu) for nu in component_split(3)] == ["3", "2,1", "1,1,1"]
    assert refined_component_count_c3() == 7
    with pytest.raises(ValueError):
        component_lower_bound(0)


def test_chow_ring_arithmetic():
    H = ChowClass(0, 1)
    assert H * H * H == ChowClass(0, 0, 0, 1)
    assert H * H * H * H == ChowClass()
    assert exp_hyperplane(1) * exp_hyperplane(-1) == ONE
    assert exp_hyperplane(2) * exp_hyperplane(3) == exp_hyperplane(5)
    assert ChowClass.from_coeffs([1, 2]) == ChowClass(1, 2, 0, 0)
    assert ChowClass(1, 2, 3, 4).dual() == ChowClass(1, -2, 3, -4)
    assert 2 * ChowClass(1, 1) == ChowClass(2, 2)


@pytest.mark.parametrize("a", range(-3, 4))
@pytest.mark.parametrize("b", range(-3, 4))
def test_line_bundle_pairing_is_binomial(a, b):
    n = b - a
    expected = Fraction((n + 1) * (n + 2) * (n + 3), 6)
    assert euler_pairing(ch_line_bundle(a), ch_line_bundle(b)) == expected
    if n >= 0:
        assert expected == comb(n + 3, 3)


def test_todd_class_gives_structure_sheaf_chi():
    assert TODD_P3.r == 1
    assert chi(ONE) == 1
    assert [twisted_chi(ONE, m) for m in range(-3, 3)] == [0, 0, 0, 1, 4, 10]


@pytest.mark.parametrize("d", range(-3, 4))
def test_line_sheaf_character(d):
    ch = ch_line_sheaf(d)
    assert ch.r == 0 and ch.c1 == 0 and ch.c2 == 1
    for m in range(-3, 4):
        assert twisted_chi(ch, m) == m + d + 1


@given(classes, classes, classes, small)
@settings(max_examples=60, deadline=None)
def test_pairing_is_bilinear(E, F, G, k):
    assert euler_pairing(E + F, G) == euler_pairing(E, G) + euler_pairing(F, G)
    assert euler_pairing(E, F + G) == euler_pairing(E, F) + euler_pairing(E, G)
    assert euler_pairing(E * k, F) == k * euler_pairing(E, F)


@given(small, small, small, small)
@settings(max_examples=60, deadline=None)
def test_curve_classes_pair_to_zero(a, b, c, d):
    # ch of two curve-supported classes starts in degree 2; the product lands in degree >= 4
    assert euler_pairing(ChowClass(0, 0, a, b), ChowClass(0, 0, c, d)) == 0


def test_pairing_values():
    Q = ch_line_sheaf(1)
    I = ONE - Q
    assert euler_pairing(ONE, ONE) == 1
    assert euler_pairing(I, Q) == 2
    demo = pairing_demo()
    assert (demo["chi_O_O"], demo["chi_I_Q"]) == ("1", "2")


@pytest.mark.xfail(strict=True, reason=(
    "target chi(Q,Q) = 4 for Q = O_l(1) is unattainable: Hirzebruch-Riemann-Roch on P3 gives 0 "
    "for any two classes supported on curves, matching Ext dims 1, 4, 3, 0"))
def test_pairing_target_for_line_sheaf():
    Q = ch_line_sheaf(1)
    assert euler_pairing(Q, Q) == 4


def test_int_poly_arithmetic():
    p = IntPoly([1, 0, 0, 1])
    assert p.degree() == 3 and p(2) == 9 and p(-1) == 0
    assert (p * IntPoly([1, 1])).coeffs == (1, 1, 0, 1, 1)
    q, r = (p * IntPoly([2, 0, 5])).divmod(p)
    assert q == IntPoly([2, 0, 5]) and r == IntPoly([])
    assert IntPoly([3, 0, -1]).format() == "3 + -1*t^2"
    with pytest.raises(ValueError):
        p.divmod(IntPoly([1, 2]))


def test_poincare_polynomial_of_charge_one():
    P = poincare_poly_c1()
    assert P == projective_space_poly(5) * SL2_FACTOR
    assert P == delta_formula_c1()
    assert P.coeffs == (1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1)
    assert P(1) == 12 and P(-1) == 0
    q, r = P.divmod(SL2_FACTOR)
    assert q == projective_space_poly(5) and not r.coeffs


def test_euler_characteristic_vanishing():
    assert euler_char_vanishing(SL2_FACTOR)
    assert euler_char_vanishing(projective_space_poly(3) * SL2_FACTOR)
    assert not euler_char_vanishing(projective_space_poly(3))
    assert poincare_claim(1)["euler_characteristic"] == 0
    claim = poincare_claim(4)
    assert claim["poincare"] is None and claim["euler_characteristic"] == 0
    assert "1 + t^3" in claim["formula"]
