"""
Release-gate criteria, runnable as a whole through ``instantonfix selftest``.

Each criterion is a function returning ``(passed, detail)``; :func:`run_all`
times them and collects :class:`CriterionResult` records.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .adhm_core import (
    apply_gauge, build_monad, check_equations, complex_condition, hilbert_poly_E,
    hilbert_poly_E_rank2_closed, singular_pencil_dets, stability_closure, weak_stability,
)
from .corpus import fixed_corpus, random_data, random_invertible, random_torus
from .exact_math import Poly, Z2, Z3
from .filtration_solver import (
    case_table_c3_nonprimitive, derived_genus, generalized_rank_degree, gr_structure_sheaf, solve,
    support_of,
)
from .moduli_invariants import (
    ONE, SL2_FACTOR, ch_line_sheaf, component_lower_bound, delta_formula_c1, euler_char_vanishing,
    euler_pairing, partition_count_euler, partition_count_recursive, poincare_poly_c1,
    refined_component_count_c3,
)
from .reports import classify, dumps
from .torus_fixed import act, is_fixed_candidate, pencil_nilpotent, reduced_equation_residuals, sample_fixedness
from .young_monomial import (
    Partition, hilbert_fn_oracle, hilbert_poly_closed, hilbert_scheme_dim, hom_degree0_oracle,
    instanton_quotient_poly, partition_to_ideal, partitions_of, quotient_length, resolution,
)

Outcome = tuple[bool, str]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _partitions_up_to(cmax: int):
    for c in range(1, cmax + 1):
        yield from partitions_of(c)


def hilbert_oracle_agreement() -> Outcome:
    checked = 0
    for nu in _partitions_up_to(12):
        closed = hilbert_poly_closed(nu)
        for m in range(max(nu.weights()), 31):
            if hilbert_fn_oracle(nu, m) != closed(m):
                return False, f"{nu} differs at m={m}"
            checked += 1
    return True, f"{checked} (partition, m) pairs agree"


def resolution_consistency() -> Outcome:
    n = 0
    for nu in _partitions_up_to(12):
        if resolution(nu).structure_euler_poly() != hilbert_poly_closed(nu):
            return False, f"{nu}: resolution additivity differs from the closed form"
        n += 1
    return True, f"{n} partitions"


def example_lock_ins() -> Outcome:
    problems = []
    if partition_to_ideal(Partition((3, 3, 2))).generators != ((0, 3), (2, 2), (3, 0)):
        problems.append("ideal of (3,3,2)")
    for nu in (Partition((4, 3, 1)), Partition((3, 2, 2, 1))):
        res = resolution(nu)
        if (sorted(res.inner_weights), sorted(res.outer_weights)) != ([3, 3, 4, 4], [4, 5, 5]):
            problems.append(f"weights of {nu}")
    res = resolution(Partition((2,)))
    if (sorted(res.inner_weights), list(res.outer_weights)) != ([1, 2], [3]):
        problems.append("resolution of (2)")
    for c in range(1, 13):
        res = resolution(Partition((1,) * c))
        if (sorted(res.inner_weights), list(res.outer_weights)) != ([1, c], [c + 1]):
            problems.append(f"primitive resolution c={c}")
    return not problems, "all match" if not problems else "; ".join(problems)


def quotient_lengths() -> Outcome:
    problems = []
    if quotient_length(Partition((2,))) != 3:
        problems.append("l_Z((2)) != 3")
    for c in range(1, 13):
        if quotient_length(Partition((1,) * c)) != c * (c + 1) // 2:
            problems.append(f"l_Z(1^{c})")
    for nu in _partitions_up_to(12):
        diff = instanton_quotient_poly(nu.charge) - hilbert_poly_closed(nu)
        if diff.degree > 0 or diff(0) != quotient_length(nu):
            problems.append(f"bookkeeping {nu}")
    return not problems, "all match" if not problems else "; ".join(problems[:5])


def hilbert_scheme_dimension() -> Outcome:
    if hilbert_scheme_dim(Partition((1,))) != 4:
        return False, "dim for (1) is not 4"
    for nu in _partitions_up_to(3):
        a, b = hilbert_scheme_dim(nu), hom_degree0_oracle(nu)
        if a != b:
            return False, f"{nu}: formula {a} vs oracle {b}"
    return True, "formula = Hom oracle for c <= 3"


def monad_equivalence(count: int = 1000, seed: int = 20240601) -> Outcome:
    rng = random.Random(seed)
    disagree = satisfied = 0
    for X, _ in random_data(rng, count):
        eq = check_equations(X).ok
        satisfied += eq
        if complex_condition(build_monad(X)) != eq:
            disagree += 1
    balanced = count // 4 <= satisfied <= 3 * count // 4
    return disagree == 0 and balanced, f"{disagree} disagreements, {satisfied}/{count} satisfy the equations"


def _verdicts(X):
    return (check_equations(X).ok, stability_closure(X).stable, weak_stability(X).status)


def gauge_torus_equivariance(data: int = 6, draws: int = 100, seed: int = 11) -> Outcome:
    rng = random.Random(seed)
    sample = [X for X, _ in random_data(rng, data, max_c=3, max_r=2)]
    picked = {"monomial 2 r=1", "monomial 1,1 r=2", "zero c=2 r=1", "diagonal A0 c=2",
              "common eigenline c=2", "split, no common eigenline c=2", "non-split spectrum c=2"}
    sample += [X for name, X in fixed_corpus(2) if name in picked]
    bad = 0
    for X in sample:
        ref = _verdicts(X)
        for _ in range(draws):
            if _verdicts(apply_gauge(X, random_invertible(rng, X.c))) != ref:
                bad += 1
            if _verdicts(act(X, random_torus(rng, X.r))) != ref:
                bad += 1
    return bad == 0, f"{bad} violations over {len(sample)} data x {2 * draws} group elements"


def fixed_point_necessities() -> Outcome:
    certified = 0
    failures = []
    corpus = fixed_corpus(3)
    for name, X in corpus:
        if not sample_fixedness(X).certified:
            continue
        certified += 1
        if not (X.J0.is_zero() and X.J1.is_zero()):
            failures.append(f"{name}: J nonzero")
        if not all(R.is_zero() for R in reduced_equation_residuals(X)):
            failures.append(f"{name}: reduced equations")
        if not (pencil_nilpotent(X.A0, X.A1) and pencil_nilpotent(X.B0, X.B1)):
            failures.append(f"{name}: pencils not nilpotent")
        if singular_pencil_dets(X) != (Poly.var(Z2, X.c), Poly.var(Z3, X.c)):
            failures.append(f"{name}: singular pencil dets")
        if not is_fixed_candidate(X).ok:
            failures.append(f"{name}: fixed-candidate check")
    nontrivial = 0 < certified < len(corpus)
    ok = not failures and nontrivial
    detail = f"{certified}/{len(corpus)} corpus data certified fixed"
    return ok, detail if not failures else detail + "; " + "; ".join(failures)


def instanton_hilbert_poly() -> Outcome:
    for c in range(0, 11):
        P = hilbert_poly_E(c, 2)
        if P != hilbert_poly_E_rank2_closed(c):
            return False, f"cubic mismatch at c={c}"
        if P(-1) != -c:
            return False, f"P_E(-1) = {P(-1)} at c={c}"
    return True, "c = 0..10"


EXPECTED_CASES = {
    (1,): [((1, 0),)],
    (2,): [((1, 1), (0, 0))],
    (1, 1): [((1, 1), (0, 0))],
    (3,): [((2, 0), (1, 0), (0, 0)), ((1, 0), (1, 1), (0, 0))],
    (1, 1, 1): [((2, 0), (1, 0), (0, 0)), ((1, 0), (1, 1), (0, 0))],
    (2, 1): [((2, 1), (0, 1), (-1, 0)), ((2, 0), (1, 0), (0, 0)), ((1, 3), (0, 0), (-1, 0))],
}
EXPECTED_TABLE = [(1, -3, 4, 3), (2, -2, 3, 2), (3, -1, 2, 1)]


def solver_vs_classification() -> Outcome:
    problems = []
    for parts, expected in EXPECTED_CASES.items():
        got = [tuple((s.degree, s.torsion) for s in cs.levels) for cs in solve(Partition(parts)).cases]
        if sorted(got) != sorted(expected):
            problems.append(f"{parts}: {got}")
    rows = case_table_c3_nonprimitive()
    feasible = [r.as_tuple() for r in rows if r.feasible]
    infeasible = sorted(r.z_tilde for r in rows if not r.feasible)
    if feasible != EXPECTED_TABLE:
        problems.append(f"table rows {feasible}")
    if infeasible != [0, 4, 5]:
        problems.append(f"infeasible z~ {infeasible}")
    return not problems, "counts 1,1,1,2,2,3 and table rows match" if not problems else "; ".join(problems)


def riemann_roch() -> Outcome:
    checked = 0
    for nu in _partitions_up_to(8):
        gc = generalized_rank_degree(gr_structure_sheaf(nu))
        g = derived_genus(gc, hilbert_poly_closed(nu)(0))
        if g != 0:
            return False, f"structure sheaf of {nu}: genus {g}"
        checked += 1
        if support_of(nu).kind == "unsupported":
            continue
        for case in solve(nu).cases:
            g = derived_genus(case.generalized(), instanton_quotient_poly(nu.charge)(0))
            if g != 0:
                return False, f"case {case} of {nu}: genus {g}"
            checked += 1
    return True, f"{checked} graded objects have g = 0"


def component_counts() -> Outcome:
    for c in range(0, 51):
        if partition_count_recursive(c) != partition_count_euler(c):
            return False, f"methods disagree at c={c}"
    for c in range(1, 13):
        if partition_count_recursive(c) != sum(1 for _ in partitions_of(c)):
            return False, f"enumeration disagrees at c={c}"
    vals = (partition_count_recursive(2), partition_count_recursive(3),
            refined_component_count_c3(), component_lower_bound(2))
    return vals == (2, 3, 7, 2), "p(2), p(3), refined c=3, bound(2) = " + ", ".join(map(str, vals))


def poincare_euler() -> Outcome:
    P = poincare_poly_c1()
    q, rem = P.divmod(SL2_FACTOR)
    ok = P == delta_formula_c1() and P(-1) == 0 and not rem.coeffs and euler_char_vanishing(P)
    return ok, f"P = {P.format()}, P(-1) = {P(-1)}"


def euler_pairings() -> Outcome:
    Q = ch_line_sheaf(1)
    I = ONE - Q
    qq, iq = euler_pairing(Q, Q), euler_pairing(I, Q)
    ok = qq == 4 and iq == 2
    detail = f"chi(Q,Q) = {qq} (target 4), chi(I,Q) = {iq} (target 2)"
    if qq != 4:
        detail += "; chi(Q,Q) vanishes for any two classes supported on curves in P3"
    return ok, detail


def determinism(charge: int = 6, jobs: int = 4) -> Outcome:
    def fresh(n_jobs: int) -> str:
        solve.cache_clear()
        return dumps(classify(charge, jobs=n_jobs).to_json())

    a, b, c = fresh(1), fresh(1), fresh(jobs)
    return a == b == c, f"charge {charge}: {len(a)} bytes, identical for 1 and {jobs} threads"


CRITERIA: list[tuple[int, str, Callable[[], Outcome]]] = [
    (1, "Hilbert polynomial oracle agreement", hilbert_oracle_agreement),
    (2, "resolution consistency", resolution_consistency),
    (3, "example lock-ins", example_lock_ins),
    (4, "quotient lengths", quotient_lengths),
    (5, "Hilbert scheme dimension", hilbert_scheme_dimension),
    (6, "monad equivalence", monad_equivalence),
    (7, "gauge and torus equivariance", gauge_torus_equivariance),
    (8, "fixed-point necessities", fixed_point_necessities),
    (9, "instanton Hilbert polynomial", instanton_hilbert_poly),
    (10, "filtration solver cases and table", solver_vs_classification),
    (11, "Riemann-Roch with genus 0", riemann_roch),
    (12, "component counts", component_counts),
    (13, "Poincare polynomial and Euler characteristic", poincare_euler),
    (14, "Euler pairings", euler_pairings),
    (15, "determinism", determinism),
]


def run_criterion(number: int) -> CriterionResult:
    for n, name, fn in CRITERIA:
        if n == number:
            start = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, reported by name
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(n, name, passed, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(only: Optional[list[int]] = None) -> list[CriterionResult]:
    return [run_criterion(n) for n, _, _ in CRITERIA if only is None or n in only]
