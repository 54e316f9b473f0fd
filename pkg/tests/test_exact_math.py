import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from instantonfix.exact_math import (
    X, Z0, Z1, Poly, PolyMatrix, RatMatrix, UniPoly, char_poly_poly_entries, det_poly, mat_kernel,
    mat_rank, rational_from_json, rational_roots, rational_to_json, solve_affine, to_rational,
    twisted_euler_cubic,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rationals_parse_and_serialize():
    assert to_rational("6/4") == Fraction(3, 2)
    assert to_rational(-3) == -3
    assert rational_to_json(Fraction(4, 2)) == 2
    assert rational_to_json(Fraction(-1, 3)) == "-1/3"
    assert rational_from_json("-1/3") == Fraction(-1, 3)
    with pytest.raises((ValueError, ZeroDivisionError)):
        to_rational("1/0")


@given(rationals, rationals)
def test_rational_sum_is_exact(p, q):
    a, b, c, d = p.numerator, p.denominator, q.numerator, q.denominator
    total = (p + q) * b * d
    assert total.denominator == 1 and total == a * d + c * b


def test_rank_examples():
    assert mat_rank(RatMatrix.identity(2)) == 2
    assert mat_rank(RatMatrix.zeros(3, 3)) == 0
    assert mat_rank(RatMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert mat_kernel(RatMatrix.identity(3)) == []
    assert len(mat_kernel(RatMatrix.zeros(2, 3))) == 3
    (v,) = mat_kernel(RatMatrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] != 0


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    M = RatMatrix.from_rows(rows)
    K = mat_kernel(M)
    assert mat_rank(M) + len(K) == M.cols
    for v in K:
        assert all(x == 0 for x in M.apply(v))


@given(matrices(3, 4), st.lists(rationals, min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_solve_affine_on_consistent_systems(rows, x):
    M = RatMatrix.from_rows(rows)
    x = x[: M.cols]
    b = M.apply(x)
    p, K = solve_affine(M, b)
    assert M.apply(p) == tuple(b)
    assert len(K) == M.cols - mat_rank(M)


def test_solve_affine_inconsistent():
    assert solve_affine(RatMatrix.from_rows([[1, 1], [1, 1]]), [0, 1]) is None


def test_inverse_and_det():
    M = RatMatrix.from_rows([[2, 1], [7, 4]])
    assert M.det() == 1
    assert M @ M.inverse() == RatMatrix.identity(2)
    with pytest.raises((ValueError, ZeroDivisionError)):
        RatMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_char_poly_examples():
    z0, z1, x = Poly.var(Z0), Poly.var(Z1), Poly.var(X)
    zero = Poly.const(0)
    assert char_poly_poly_entries([[zero, zero], [zero, zero]]) == x ** 2
    assert char_poly_poly_entries([[z0, zero], [zero, z1]]) == x ** 2 - (z0 + z1) * x + z0 * z1
    assert char_poly_poly_entries([[zero, z0], [zero, zero]]) == x ** 2
    with pytest.raises(ValueError):
        char_poly_poly_entries([[z0, z1]])


def test_char_poly_specializes():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 3)
        M0 = RatMatrix(n, n, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        M1 = RatMatrix(n, n, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        P = PolyMatrix.from_ratmatrix(M0, Z0) + PolyMatrix.from_ratmatrix(M1, Z1)
        chi = char_poly_poly_entries(P)
        a, b = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        numeric = M0.scale(a) + M1.scale(b)
        lam = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
        direct = (RatMatrix.identity(n).scale(lam) - numeric).det()
        assert chi.evaluate({Z0: a, Z1: b, X: lam}) == direct


def test_det_poly_matches_numeric_det():
    M = RatMatrix.from_rows([[1, 2, 0], [3, -1, 4], [0, 5, 2]])
    assert det_poly(PolyMatrix.from_ratmatrix(M)) == Poly.const(M.det())


def test_twisted_euler_cubic():
    assert twisted_euler_cubic(0)(0) == 1
    assert twisted_euler_cubic(-1)(0) == 0
    assert twisted_euler_cubic(1)(0) == 4
    for k in range(-4, 4):
        for m in range(-3, 6):
            n = m + k
            assert twisted_euler_cubic(k)(m) == Fraction((n + 1) * (n + 2) * (n + 3), 6)


def test_unipoly_arithmetic():
    p = UniPoly([1, 2, 1])
    q, r = p.divmod(UniPoly([1, 1]))
    assert q == UniPoly([1, 1]) and r.is_zero()
    assert p.degree == 2 and UniPoly().is_zero()


def test_rational_roots_examples():
    assert rational_roots(UniPoly([-6, 11, -6, 1])) == ([1, 2, 3], True)
    assert rational_roots(UniPoly([Fraction(-1, 4), 0, 1])) == ([Fraction(-1, 2), Fraction(1, 2)], True)
    assert rational_roots(UniPoly([-2, 0, 1])) == ([], False)
    assert rational_roots(UniPoly([0, 0, 1, 1])) == ([-1, 0, 0], True)


@given(st.lists(st.fractions(min_value=-30, max_value=30, max_denominator=9), min_size=1, max_size=4),
       st.sampled_from([(1,), (1, 0, 1), (-3, 0, 1), (2, 1, 1)]),
       st.fractions(min_value=1, max_value=40, max_denominator=40))
@settings(max_examples=80, deadline=None)
def test_rational_roots_recovers_planted_roots(roots, extra, scale):
    p = UniPoly(list(extra)) * scale
    for r in roots:
        p = p * UniPoly([-r, 1])
    got, splits = rational_roots(p)
    assert got == sorted(roots)
    assert splits == (len(extra) == 1)
