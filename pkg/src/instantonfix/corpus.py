"""
Seeded sample data for property checks: random ADHM data on both sides of
the equations, random gauge and torus elements, and a small fixed-point
corpus built from Young diagrams.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

from .adhm_core import MATRIX_FIELDS, AdhmDatum
from .exact_math import RatMatrix
from .torus_fixed import TorusElement, monomial_fixed_datum
from .young_monomial import partitions_of


def _rat(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    den = rng.choice((1, 1, 1, 2, 3))
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_matrix(rng: random.Random, rows: int, cols: int) -> RatMatrix:
    return RatMatrix(rows, cols, [[_rat(rng) for _ in range(cols)] for _ in range(rows)])


def random_invertible(rng: random.Random, n: int) -> RatMatrix:
    while True:
        g = random_matrix(rng, n, n)
        if g.det() != 0:
            return g


def _poly_in(rng: random.Random, M: RatMatrix) -> RatMatrix:
    n = M.rows
    out = RatMatrix.identity(n) * _rat(rng)
    power = RatMatrix.identity(n)
    for _ in range(n):
        power = power @ M
        out = out + power * _rat(rng)
    return out


def random_solution(rng: random.Random, c: int, r: int) -> AdhmDatum:
    """A random datum satisfying the three equations.

    ``A`` and ``B`` are polynomials in one random matrix, so all brackets
    vanish; then either ``J = 0`` or ``I = 0`` kills the ``IJ`` terms.
    """
    M = random_matrix(rng, c, c)
    mats = {name: _poly_in(rng, M) for name in ("A0", "A1", "B0", "B1")}
    if rng.random() < 0.5:
        mats["I0"], mats["I1"] = random_matrix(rng, c, r), random_matrix(rng, c, r)
    else:
        mats["J0"], mats["J1"] = random_matrix(rng, r, c), random_matrix(rng, r, c)
    return AdhmDatum.build(c, r, **mats)


def perturb(rng: random.Random, X: AdhmDatum) -> AdhmDatum:
    """Add a random nonzero amount to one random entry of one random matrix."""
    name = rng.choice(MATRIX_FIELDS)
    M = getattr(X, name)
    i, j = rng.randrange(M.rows), rng.randrange(M.cols)
    rows = M.tolist()
    delta = Fraction(0)
    while delta == 0:
        delta = _rat(rng)
    rows[i][j] += delta
    return X.replace(**{name: RatMatrix(M.rows, M.cols, rows)})


def random_data(rng: random.Random, count: int, max_c: int = 3, max_r: int = 2) -> Iterator[tuple[AdhmDatum, bool]]:
    """Alternate solutions and perturbed solutions; the flag marks construction, not the verdict."""
    for k in range(count):
        c, r = rng.randint(1, max_c), rng.randint(1, max_r)
        X = random_solution(rng, c, r)
        if k % 2:
            yield perturb(rng, X), False
        else:
            yield X, True


def random_torus(rng: random.Random, r: int) -> TorusElement:
    def nz():
        x = Fraction(0)
        while x == 0:
            x = _rat(rng)
        return x

    return TorusElement(nz(), nz(), nz(), tuple(nz() for _ in range(r)))


def fixed_corpus(max_c: int = 3) -> list[tuple[str, AdhmDatum]]:
    """Named data for the fixed-point checks, fixed and non-fixed alike."""
    out: list[tuple[str, AdhmDatum]] = []
    for c in range(1, max_c + 1):
        out.append((f"zero c={c} r=1", AdhmDatum.zero(c, 1)))
        for nu in partitions_of(c):
            out.append((f"monomial {nu} r=1", monomial_fixed_datum(nu.boxes())))
            out.append((f"monomial {nu} r=2", monomial_fixed_datum(nu.boxes(), r=2)))
            out.append((f"monomial {nu} A1 B1", monomial_fixed_datum(nu.boxes(), a_index=1, b_index=1)))
    out.append(("I0=J0=1 c=1 r=1", AdhmDatum.build(1, 1, I0=[[1]], J0=[[1]])))
    out.append(("diagonal A0 c=2", AdhmDatum.build(2, 1, A0=[[1, 0], [0, 2]], I0=[[1], [1]])))
    out.append(("mixed pencil c=2", AdhmDatum.build(2, 1, A0=[[0, 0], [1, 0]], A1=[[0, 1], [0, 0]],
                                                      I0=[[1], [0]])))
    out.append(("common eigenline c=2", AdhmDatum.build(2, 1, A0=[[1, 0], [0, 2]], B0=[[3, 0], [0, -1]])))
    out.append(("split, no common eigenline c=2", AdhmDatum.build(2, 1, A0=[[0, 1], [1, 0]], B0=[[1, 0], [0, 2]])))
    out.append(("non-split spectrum c=2", AdhmDatum.build(2, 1, A0=[[0, 1], [-1, 0]])))
    rng = random.Random(7)
    for k in range(4):
        out.append((f"random solution {k}", random_solution(rng, 2, 1)))
    return out
