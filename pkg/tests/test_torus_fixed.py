import random
from fractions import Fraction

import pytest

from instantonfix.adhm_core import AdhmDatum, apply_gauge, check_equations, stability_closure
from instantonfix.corpus import fixed_corpus, random_data, random_solution, random_torus
from instantonfix.exact_math import RatMatrix
from instantonfix.torus_fixed import (
    TorusElement, act, check_sandwich, gauge_witness, is_fixed_candidate, monomial_fixed_datum,
    nilpotent_pencils_force_dets, pencil_nilpotent, sample_fixedness,
)
from instantonfix.young_monomial import partitions_of

JORDAN = RatMatrix.from_rows([[0, 0], [1, 0]])  # e1 -> e2


def test_identity_and_zero_actions():
    X = random_solution(random.Random(4), 2, 2)
    assert act(X, TorusElement.identity(2)) == X
    Z = AdhmDatum.zero(2, 1)
    assert act(Z, TorusElement(3, 5, 7, [2])) == Z


def test_zero_entry_rejected():
    with pytest.raises(ValueError):
        act(AdhmDatum.zero(1, 1), TorusElement(0, 1, 1, [1]))
    with pytest.raises(ValueError):
        act(AdhmDatum.zero(1, 2), TorusElement(1, 1, 1, [1]))


def test_group_law():
    rng = random.Random(8)
    for X, _ in random_data(rng, 30):
        s, t = random_torus(rng, X.r), random_torus(rng, X.r)
        assert act(act(X, s), t) == act(X, s * t)


def test_action_preserves_verdicts():
    rng = random.Random(9)
    for X, _ in random_data(rng, 100):
        tau = random_torus(rng, X.r)
        Y = act(X, tau)
        assert check_equations(Y).ok == check_equations(X).ok
        assert stability_closure(Y).stable == stability_closure(X).stable


def test_witness_examples():
    rng = random.Random(10)
    X = random_solution(rng, 2, 1)
    g = gauge_witness(X, TorusElement.identity(1))
    assert g is not None and apply_gauge(X, g) == X
    for _ in range(5):
        tau = random_torus(rng, 1)
        assert gauge_witness(AdhmDatum.zero(2, 1), tau) is not None
    t1, t2, t3 = Fraction(3), Fraction(5), Fraction(7)
    X = AdhmDatum.build(1, 2, I0=[[1, 0]])
    assert gauge_witness(X, TorusElement(t1, t2, t3, [t2, 1])) == RatMatrix.identity(1)


def test_witness_soundness():
    corpus = dict(fixed_corpus(3))
    rng = random.Random(12)
    for name in ("monomial 2,1 r=1", "monomial 3 r=2", "monomial 1,1 A1 B1"):
        X = corpus[name]
        found = 0
        one = Fraction(1)
        for t in (Fraction(2), Fraction(-1, 3)):
            for pattern in ((t, one, one), (one, t, one), (one, one, t)):
                for e in ([1] * X.r, [pattern[1]] * X.r, [pattern[1] / pattern[0]] * X.r):
                    tau = TorusElement(*pattern, e)
                    g = gauge_witness(X, tau)
                    if g is not None:
                        found += 1
                        assert g.det() != 0
                        assert apply_gauge(X, g) == act(X, tau)
        assert found > 0
    X = random_solution(rng, 2, 1)
    g = gauge_witness(X, TorusElement(2, 3, 5, [7]))
    if g is not None:
        assert apply_gauge(X, g) == act(X, TorusElement(2, 3, 5, [7]))


def test_fixed_candidate_examples():
    assert is_fixed_candidate(AdhmDatum.zero(2, 1)).ok
    assert is_fixed_candidate(AdhmDatum.build(2, 1, A0=JORDAN)).ok
    v = is_fixed_candidate(AdhmDatum.build(1, 1, I0=[[1]], J0=[[1]]))
    assert "J nonzero" in v.failures


def test_fixed_candidates_satisfy_equations():
    for name, X in fixed_corpus(3):
        if is_fixed_candidate(X).ok:
            assert check_equations(X).ok, name


def test_pencil_nilpotent_examples():
    Z = RatMatrix.zeros(2, 2)
    assert pencil_nilpotent(Z, Z)
    assert pencil_nilpotent(JORDAN, JORDAN)
    assert not pencil_nilpotent(JORDAN, JORDAN.transpose())
    with pytest.raises(ValueError):
        pencil_nilpotent(Z, RatMatrix.zeros(3, 3))


def test_sandwich_examples():
    X = random_solution(random.Random(3), 2, 2).replace(J0=RatMatrix.zeros(2, 2), J1=RatMatrix.zeros(2, 2))
    assert check_sandwich(X, 3)
    assert not check_sandwich(AdhmDatum.build(1, 1, I0=[[1]], J0=[[1]]), 0)
    for name, X in fixed_corpus(3):
        if is_fixed_candidate(X).ok:
            assert check_sandwich(X, 2 * X.c), name


def test_nilpotent_pencils_force_dets_on_corpus():
    for name, X in fixed_corpus(3):
        assert nilpotent_pencils_force_dets(X), name


@pytest.mark.parametrize("nu", [p for c in (1, 2, 3) for p in partitions_of(c)], ids=str)
def test_monomial_data_are_certified(nu):
    X = monomial_fixed_datum(nu.boxes())
    assert stability_closure(X).stable
    assert is_fixed_candidate(X).ok
    assert sample_fixedness(X).certified


def test_non_fixed_data_are_not_certified():
    assert not sample_fixedness(AdhmDatum.build(1, 1, I0=[[1]], J0=[[1]])).certified
    assert not sample_fixedness(AdhmDatum.build(2, 1, A0=[[1, 0], [0, 2]], I0=[[1], [1]])).certified


def test_certified_corpus_data_have_zero_J():
    for name, X in fixed_corpus(3):
        if sample_fixedness(X).certified:
            assert X.J0.is_zero() and X.J1.is_zero(), name
