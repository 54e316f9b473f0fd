import json
import random
from fractions import Fraction

import pytest

from instantonfix.adhm_core import (
    AdhmDatum, SchemaError, apply_gauge, build_monad, check_equations, complex_condition,
    hilbert_poly_E, hilbert_poly_E_rank2_closed, image_basis, singular_pencil_dets, stability_closure,
    weak_stability,
)
from instantonfix.corpus import random_data, random_invertible, random_solution
from instantonfix.exact_math import Z0, Z2, Z3, Poly, RatMatrix, twisted_euler_cubic

VIOLATING = AdhmDatum.build(1, 1, I0=[[1]], J0=[[1]])


def test_equation_examples():
    assert check_equations(AdhmDatum.zero(3, 2)).ok
    assert check_equations(AdhmDatum.build(1, 2, I0=[[5, -1]], I1=[[2, 3]])).ok
    verdict = check_equations(VIOLATING)
    assert not verdict.ok and verdict.violations == (1,)


def test_third_equation_uses_mixed_terms():
    # I0 J1 alone violates only the mixed equation
    X = AdhmDatum.build(1, 1, I0=[[1]], J1=[[1]])
    assert check_equations(X).violations == (3,)
    assert not complex_condition(build_monad(X))


def test_gauge_examples():
    rng = random.Random(5)
    X = random_solution(rng, 2, 2)
    assert apply_gauge(X, RatMatrix.identity(2)) == X
    Y = apply_gauge(X, RatMatrix.identity(2).scale(2))
    assert Y.A0 == X.A0 and Y.B1 == X.B1
    assert Y.I0 == X.I0.scale(2) and Y.J1 == X.J1.scale(Fraction(1, 2))
    with pytest.raises((ValueError, ZeroDivisionError)):
        apply_gauge(X, RatMatrix.zeros(2, 2))


def test_gauge_preserves_equation_verdict():
    rng = random.Random(17)
    for X, _ in random_data(rng, 100):
        g = random_invertible(rng, X.c)
        assert check_equations(apply_gauge(X, g)).ok == check_equations(X).ok


def test_monad_of_zero_datum():
    M = build_monad(AdhmDatum.zero(1, 2))
    z2, z3 = Poly.var(Z2), Poly.var(Z3)
    assert M.alpha.shape == (4, 1) and M.beta.shape == (1, 4)
    assert [M.alpha[i, 0] for i in range(4)] == [z2, z3, Poly.zero(), Poly.zero()]
    assert [M.beta[0, j] for j in range(4)] == [-z3, z2, Poly.zero(), Poly.zero()]
    assert complex_condition(M)


def test_monad_equivalence_on_random_data():
    rng = random.Random(23)
    seen = set()
    for X, _ in random_data(rng, 200):
        ok = check_equations(X).ok
        seen.add(ok)
        assert complex_condition(build_monad(X)) == ok
    assert seen == {True, False}


def test_violating_monad_product_is_nonzero():
    M = build_monad(VIOLATING)
    assert not (M.beta @ M.alpha).is_zero()


def test_stability_closure_examples():
    v = stability_closure(AdhmDatum.build(1, 1, I0=[[1]]))
    assert v.stable and v.closure_dim == 1
    v = stability_closure(AdhmDatum.zero(2, 1))
    assert not v.stable and v.closure_dim == 0
    v = stability_closure(AdhmDatum.build(2, 1, I0=[[1], [0]], A0=[[0, 0], [1, 0]]))
    assert v.stable and v.closure_dim == 2


def test_stability_closure_monotone_in_framing():
    rng = random.Random(2)
    for X, _ in random_data(rng, 40, max_c=3, max_r=1):
        wider = AdhmDatum.build(X.c, 2, A0=X.A0, A1=X.A1, B0=X.B0, B1=X.B1,
                                I0=X.I0.hstack(RatMatrix(X.c, 1, [[rng.randint(-2, 2)] for _ in range(X.c)])),
                                I1=X.I1.hstack(RatMatrix.zeros(X.c, 1)))
        assert stability_closure(wider).closure_dim >= stability_closure(X).closure_dim


def test_weak_stability_examples():
    assert weak_stability(AdhmDatum.zero(1, 1)).status == "weakly_stable"
    assert weak_stability(AdhmDatum.build(2, 2, I0=[[1, 0], [0, 1]])).status == "weakly_stable"
    v = weak_stability(AdhmDatum.build(2, 1, A0=[[1, 0], [0, 2]]))
    assert v.status == "destabilizing_line"
    assert v.line in {(1, 0), (0, 1)}
    assert weak_stability(AdhmDatum.build(2, 1, A0=[[0, 1], [-1, 0]])).status == "indeterminate"


def test_image_basis():
    assert len(image_basis(RatMatrix.from_rows([[1], [1]]), RatMatrix.from_rows([[2], [2]]))) == 1


def test_hilbert_poly_E_examples():
    assert hilbert_poly_E(1, 2)(0) == 0
    assert hilbert_poly_E(0, 2) == twisted_euler_cubic(0) * 2
    assert hilbert_poly_E(3, 2)(1) == -1
    assert hilbert_poly_E_rank2_closed(3)(1) == -1
    for c in range(11):
        assert hilbert_poly_E(c, 2) == hilbert_poly_E_rank2_closed(c)
        assert hilbert_poly_E(c, 2)(-1) == -c


def test_singular_pencil_dets():
    z0, z2, z3 = Poly.var(Z0), Poly.var(Z2), Poly.var(Z3)
    assert singular_pencil_dets(AdhmDatum.zero(2, 1)) == (z2 ** 2, z3 ** 2)
    da, _ = singular_pencil_dets(AdhmDatum.build(2, 1, A0=[[1, 0], [0, 0]]))
    assert da == (z0 + z2) * z2
    da, _ = singular_pencil_dets(AdhmDatum.build(3, 1, A0=[[0, 0, 0], [1, 0, 0], [0, 1, 0]]))
    assert da == z2 ** 3


def test_json_round_trip_and_schema_errors():
    X = random_solution(random.Random(1), 2, 1)
    assert AdhmDatum.from_json(json.loads(X.dumps())) == X
    bad = X.to_json()
    bad["I0"] = [[1, 2], [3, 4]]
    with pytest.raises(SchemaError) as err:
        AdhmDatum.from_json(bad)
    assert err.value.path == "$.I0[0]"
    missing = X.to_json()
    del missing["B1"]
    with pytest.raises(SchemaError, match=r"\$\.B1"):
        AdhmDatum.from_json(missing)
    bad = X.to_json()
    bad["A0"][1][0] = "x/2"
    with pytest.raises(SchemaError, match=r"\$\.A0\[1\]\[0\]"):
        AdhmDatum.from_json(bad)
