from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from instantonfix.exact_math import UniPoly
from instantonfix.young_monomial import (
    MonomialIdeal, Partition, hilbert_fn_oracle, hilbert_poly_closed, hilbert_scheme_dim,
    hom_degree0_oracle, ideal_to_partition, infinitesimal_filtration, inner_outer_boxes,
    instanton_quotient_poly, outer_corners, partition_from_boxes, partition_to_ideal, partitions_of,
    quotient_length, resolution,
)

P = Partition.parse


def small_partitions(cmax):
    return [nu for c in range(1, cmax + 1) for nu in partitions_of(c)]


@st.composite
def partitions(draw, cmax=12):
    c = draw(st.integers(1, cmax))
    parts, rest = [], c
    while rest:
        p = draw(st.integers(1, min(rest, parts[-1] if parts else rest)))
        parts.append(p)
        rest -= p
    return Partition(parts)


def test_partition_validation_and_parsing():
    assert P("3,3,2").parts == (3, 3, 2) and P("3,3,2").charge == 8
    assert str(P("2,1")) == "2,1"
    for bad in ("1,2", "0", "", "a"):
        with pytest.raises(ValueError):
            P(bad)


def test_partitions_are_listed_in_descending_order():
    assert [nu.parts for nu in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [sum(1 for _ in partitions_of(c)) for c in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]


def test_ideal_examples():
    assert partition_to_ideal(P("1")).generators == ((0, 1), (1, 0))
    assert str(partition_to_ideal(P("3,3,2"))) == "<z2^3, z2^2*z3^2, z3^3>"
    # column b of the diagram holds nu_{b+1} boxes along z2
    assert str(partition_to_ideal(P("2"))) == "<z2^2, z3>"
    assert str(partition_to_ideal(P("1,1"))) == "<z2, z3^2>"
    assert str(partition_to_ideal(P("1,1,1,1"))) == "<z2, z3^4>"


def test_ideal_to_partition_examples():
    assert ideal_to_partition([(1, 0), (0, 1)]) == P("1")
    assert ideal_to_partition([(3, 0), (2, 2), (0, 3)]) == P("3,3,2")
    assert ideal_to_partition([(1, 0), (0, 5)]) == P("1,1,1,1,1")
    with pytest.raises(ValueError, match="not a multiple-line ideal"):
        ideal_to_partition([(1, 0)])
    with pytest.raises(ValueError, match="not a multiple-line ideal"):
        ideal_to_partition([(0, 0)])


def test_generators_are_minimalized():
    assert MonomialIdeal([(1, 0), (2, 3), (0, 1)]).generators == ((0, 1), (1, 0))


@pytest.mark.parametrize("nu", small_partitions(14), ids=str)
def test_bijection(nu):
    assert ideal_to_partition(partition_to_ideal(nu)) == nu
    assert partition_from_boxes(nu.boxes()) == nu
    assert len(nu.boxes()) == nu.charge


def test_inner_outer_examples():
    assert inner_outer_boxes(P("1")) == ([1, 1], [2])
    assert inner_outer_boxes(P("3,2,2,1")) == ([3, 3, 4, 4], [4, 5, 5])
    assert inner_outer_boxes(P("4,3,1")) == ([3, 3, 4, 4], [4, 5, 5])
    assert inner_outer_boxes(P("2")) == ([1, 2], [3])


@pytest.mark.parametrize("nu", small_partitions(8), ids=str)
def test_outer_weights_match_corner_oracle(nu):
    _, outer = inner_outer_boxes(nu)
    assert outer == sorted(a + b for a, b in outer_corners(nu))


def test_resolution_examples():
    assert resolution(P("2")).format() == "0 -> O(-3) -> O(-1) + O(-2) -> I -> 0"
    assert resolution(P("4,3,1")).format() == "0 -> O(-4) + O(-5)^2 -> O(-3)^2 + O(-4)^2 -> I -> 0"
    for c in range(1, 10):
        res = resolution(P(",".join(["1"] * c)))
        assert sorted(res.inner_weights) == sorted([1, c]) and list(res.outer_weights) == [c + 1]


def test_closed_hilbert_examples():
    assert hilbert_poly_closed(P("1")) == UniPoly([1, 1])
    assert hilbert_poly_closed(P("1,1,1")) == UniPoly([0, 3])
    assert hilbert_poly_closed(P("2,1")) == UniPoly([1, 3])
    assert hilbert_poly_closed(P("2")) == UniPoly([1, 2])
    assert hilbert_poly_closed(P("3,3,2")) == UniPoly([-6, 8])


def test_oracle_examples():
    assert hilbert_fn_oracle(P("1"), 5) == 6
    assert hilbert_fn_oracle(P("3,3,2"), 10) == 74
    assert hilbert_fn_oracle(P("2"), 0) == 1
    with pytest.raises(ValueError):
        hilbert_fn_oracle(P("1"), -1)


@given(partitions(), st.integers(0, 30))
@settings(max_examples=200, deadline=None)
def test_oracle_matches_closed_form_past_max_weight(nu, extra):
    m = max(nu.weights()) + extra
    assert hilbert_fn_oracle(nu, m) == hilbert_poly_closed(nu)(m)


@given(partitions())
@settings(max_examples=100, deadline=None)
def test_resolution_additivity(nu):
    assert resolution(nu).structure_euler_poly() == hilbert_poly_closed(nu)
    assert hilbert_poly_closed(nu).coeff(1) == nu.charge


@given(partitions())
@settings(max_examples=100, deadline=None)
def test_transpose_keeps_weights_and_dimension(nu):
    nt = nu.transpose()
    assert sorted(nu.weights()) == sorted(nt.weights())
    assert hilbert_scheme_dim(nu) == hilbert_scheme_dim(nt)
    assert nt.transpose() == nu


def test_hilbert_scheme_dim_examples():
    assert hilbert_scheme_dim(P("1")) == 4
    assert hilbert_scheme_dim(P("2")) == 8
    assert hilbert_scheme_dim(P("1,1")) == 8


@pytest.mark.parametrize("nu", small_partitions(4), ids=str)
def test_hilbert_scheme_dim_matches_hom_oracle(nu):
    assert hilbert_scheme_dim(nu) == hom_degree0_oracle(nu)


def test_quotient_length_examples():
    assert quotient_length(P("2")) == 3
    assert quotient_length(P("1")) == 1
    for c in range(1, 13):
        assert quotient_length(Partition([1] * c)) == c * (c + 1) // 2


@pytest.mark.parametrize("nu", small_partitions(12), ids=str)
def test_quotient_length_bookkeeping(nu):
    diff = instanton_quotient_poly(nu.charge) - hilbert_poly_closed(nu)
    assert diff.degree <= 0
    assert diff(0) == quotient_length(nu)


@given(partitions())
@settings(max_examples=100, deadline=None)
def test_quotient_length_depends_only_on_box_weights(nu):
    # chi(O_C) = sum over boxes of (1 - w), so l_Z = c + sum w
    assert quotient_length(nu) == nu.charge + sum(nu.weights())
    assert quotient_length(nu) == quotient_length(nu.transpose())


def test_infinitesimal_filtration_examples():
    assert infinitesimal_filtration(P("2,1")) == [P("1"), P("2,1")]
    assert infinitesimal_filtration(P("1")) == [P("1")]
    assert infinitesimal_filtration(P("1,1,1")) == [P("1"), P("1,1"), P("1,1,1")]


@given(partitions())
@settings(max_examples=60, deadline=None)
def test_infinitesimal_filtration_increases_to_nu(nu):
    chain = infinitesimal_filtration(nu)
    assert chain[0] == P("1") and chain[-1] == nu
    sizes = [p.charge for p in chain]
    assert sizes == sorted(set(sizes))
