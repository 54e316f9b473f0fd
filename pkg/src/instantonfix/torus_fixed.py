"""
The three-torus acting on ADHM data and the matrix-level shape of its fixed points.

An element ``tau = (t1, t2, t3; e)`` rescales the coordinates of P3 and the
framing.  A gauge class ``[X]`` is fixed by ``tau`` when some ``g`` in
``GL(V)`` carries ``X`` to ``act(X, tau)``; such a ``g`` is a *gauge witness*.
At a fixed stable point the necessary conditions are ``J = 0``, commuting
equations without the ``IJ`` terms, and nilpotent pencils.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .adhm_core import AdhmDatum, apply_gauge, check_equations, singular_pencil_dets
from .exact_math import (
    X as XVAR, Z0, Z1,
    Poly, PolyMatrix, RatMatrix, char_poly_poly_entries, det_poly, solve_affine, to_rational,
)

GENERATORS = ((2, 1, 1), (1, 2, 1), (1, 1, 2))
"""Exponent pattern of the three one-parameter subgroups: ``(t,1,1)``, ``(1,t,1)``, ``(1,1,t)``."""

DEFAULT_SAMPLES = (Fraction(2), Fraction(3), Fraction(-2), Fraction(1, 2), Fraction(5, 3))


@dataclass(frozen=True)
class TorusElement:
    t1: Fraction
    t2: Fraction
    t3: Fraction
    e: tuple[Fraction, ...]

    def __init__(self, t1, t2, t3, e: Sequence = ()):
        object.__setattr__(self, "t1", to_rational(t1))
        object.__setattr__(self, "t2", to_rational(t2))
        object.__setattr__(self, "t3", to_rational(t3))
        object.__setattr__(self, "e", tuple(to_rational(x) for x in e))

    def validate(self, r: Optional[int] = None) -> None:
        if 0 in (self.t1, self.t2, self.t3) or any(x == 0 for x in self.e):
            raise ValueError("torus entries must be nonzero")
        if r is not None and len(self.e) != r:
            raise ValueError(f"framing part has length {len(self.e)}, expected {r}")

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if len(self.e) != len(other.e):
            raise ValueError("framing lengths differ")
        return TorusElement(self.t1 * other.t1, self.t2 * other.t2, self.t3 * other.t3,
                            [a * b for a, b in zip(self.e, other.e)])

    @classmethod
    def identity(cls, r: int) -> "TorusElement":
        return cls(1, 1, 1, [1] * r)


def act(X: AdhmDatum, tau: TorusElement) -> AdhmDatum:
    """Torus action on a datum."""
    tau.validate(X.r)
    t1, t2, t3 = tau.t1, tau.t2, tau.t3
    e = RatMatrix.diag(tau.e)
    einv = RatMatrix.diag([1 / x for x in tau.e])
    return AdhmDatum(
        X.c, X.r,
        X.A0.scale(t2), X.A1.scale(t2 / t1), X.B0.scale(t3), X.B1.scale(t3 / t1),
        (X.I0 @ einv).scale(t2), (X.I1 @ einv).scale(t2 / t1),
        (e @ X.J0).scale(t3), (e @ X.J1).scale(t3 / t1),
    )


# ---------------------------------------------------------------------------
# gauge witnesses
# ---------------------------------------------------------------------------

def _witness_system(X: AdhmDatum, tau: TorusElement):
    """Linear system ``M vec(g) = b`` equivalent to ``act(X, tau) = apply_gauge(X, g)``.

    ``vec(g)`` is row-major.  The equations are ``g M = M' g`` for the four
    endomorphisms, ``g I = I'`` and ``J' g = J``, where primes denote the
    acted datum.
    """
    c = X.c
    Y = act(X, tau)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def idx(i: int, j: int) -> int:
        return i * c + j

    for name in ("A0", "A1", "B0", "B1"):
        M, Mp = getattr(X, name), getattr(Y, name)
        # (g M)_{ij} - (M' g)_{ij} = sum_k g_ik M_kj - sum_k M'_ik g_kj
        for i in range(c):
            for j in range(c):
                row = [Fraction(0)] * (c * c)
                for k in range(c):
                    row[idx(i, k)] += M[k, j]
                    row[idx(k, j)] -= Mp[i, k]
                rows.append(row)
                rhs.append(Fraction(0))
    for name in ("I0", "I1"):
        M, Mp = getattr(X, name), getattr(Y, name)
        for i in range(c):
            for j in range(X.r):
                row = [Fraction(0)] * (c * c)
                for k in range(c):
                    row[idx(i, k)] += M[k, j]
                rows.append(row)
                rhs.append(Mp[i, j])
    for name in ("J0", "J1"):
        M, Mp = getattr(X, name), getattr(Y, name)
        for i in range(X.r):
            for j in range(c):
                row = [Fraction(0)] * (c * c)
                for k in range(c):
                    row[idx(k, j)] += Mp[i, k]
                rows.append(row)
                rhs.append(M[i, j])
    return RatMatrix(len(rows), c * c, rows), rhs


def _as_matrix(vec: Sequence[Fraction], c: int) -> RatMatrix:
    return RatMatrix(c, c, [list(vec[i * c:(i + 1) * c]) for i in range(c)])


def _combine(p: Sequence[Fraction], basis: Sequence[Sequence[Fraction]], coeffs: Sequence[Fraction]):
    out = list(p)
    for k, v in zip(coeffs, basis):
        for i, x in enumerate(v):
            out[i] += k * x
    return out


def gauge_witness(X: AdhmDatum, tau: TorusElement, *, draws: int = 50, seed: int = 0) -> Optional[RatMatrix]:
    """An invertible ``g`` with ``act(X, tau) = apply_gauge(X, g)``, or ``None``.

    The solution set is an affine space ``p + span(K)``.  Random rational
    points are tried first; if all are singular the determinant of the generic
    point ``p + sum s_k K_k`` is expanded symbolically and, if it is not
    identically zero, a non-root is located one coordinate at a time.
    """
    tau.validate(X.r)
    M, b = _witness_system(X, tau)
    sol = solve_affine(M, b)
    if sol is None:
        return None
    p, K = sol
    c = X.c
    g = _as_matrix(p, c)
    if g.det() != 0:
        return g
    if not K:
        return None
    rng = random.Random(seed)
    for _ in range(draws):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in K]
        g = _as_matrix(_combine(p, K, coeffs), c)
        if g.det() != 0:
            return g
    # symbolic fallback: auxiliary variables s_k occupy indices 5, 6, ...
    base = 5
    entries = [[Poly.const(p[i * c + j]) + sum((Poly.var(base + k) * K[k][i * c + j] for k in range(len(K))), Poly())
                for j in range(c)] for i in range(c)]
    D = det_poly(entries)
    if D.is_zero():
        return None
    values: dict[int, Fraction] = {}
    for k in range(len(K)):
        var = base + k
        for v in range(D.degree_in(var) + 1):
            trial = D.subs({var: v})
            if not trial.is_zero():
                D = trial
                values[var] = Fraction(v)
                break
    coeffs = [values.get(base + k, Fraction(0)) for k in range(len(K))]
    g = _as_matrix(_combine(p, K, coeffs), c)
    return g if g.det() != 0 else None


def framing_candidates(t1: Fraction, t2: Fraction, t3: Fraction, r: int) -> Iterable[tuple[Fraction, ...]]:
    """Framing tori ``e`` to try when probing fixedness under ``(t1, t2, t3)``.

    Each coordinate ranges over monomials ``t1^a t2^b t3^d`` with small
    exponents, which contains the eigenvalue-matched choices for data built
    from monomial ideals.
    """
    scalars = []
    for a, bb, d in itertools.product((-1, 0, 1), repeat=3):
        v = t1 ** a * t2 ** bb * t3 ** d
        if v not in scalars:
            scalars.append(v)
    return itertools.product(scalars, repeat=r)


def find_witness(X: AdhmDatum, t1, t2, t3) -> Optional[tuple[TorusElement, RatMatrix]]:
    """Search the framing part for a torus element with a witness."""
    t1, t2, t3 = to_rational(t1), to_rational(t2), to_rational(t3)
    for e in framing_candidates(t1, t2, t3, X.r):
        tau = TorusElement(t1, t2, t3, e)
        g = gauge_witness(X, tau)
        if g is not None:
            return tau, g
    return None


@dataclass(frozen=True)
class FixednessReport:
    certified: bool
    samples: tuple[tuple[int, str, bool], ...]  # (generator index, t, witness found)

    def to_json(self):
        return {
            "certified": self.certified,
            "samples": [{"generator": gi, "t": t, "witness": ok} for gi, t, ok in self.samples],
        }


def sample_fixedness(X: AdhmDatum, samples: Sequence[Fraction] = DEFAULT_SAMPLES) -> FixednessReport:
    """Look for witnesses on the three one-parameter subgroups at each sample ``t``."""
    rows = []
    for gi, pattern in enumerate(GENERATORS):
        for t in samples:
            ts = [t if k == 2 else Fraction(1) for k in pattern]
            found = find_witness(X, *ts) is not None
            rows.append((gi, str(t), found))
    return FixednessReport(all(ok for _, _, ok in rows), tuple(rows))


# ---------------------------------------------------------------------------
# necessary conditions at fixed points
# ---------------------------------------------------------------------------

def pencil_char_poly(M0: RatMatrix, M1: RatMatrix) -> Poly:
    if M0.shape != M1.shape or not M0.is_square():
        raise ValueError(f"pencil needs two square matrices of equal size, got {M0.shape} and {M1.shape}")
    pen = PolyMatrix.from_ratmatrix(M0, Z0) + PolyMatrix.from_ratmatrix(M1, Z1)
    return char_poly_poly_entries(pen)


def pencil_nilpotent(M0: RatMatrix, M1: RatMatrix) -> bool:
    """True iff ``M0 z0 + M1 z1`` has characteristic polynomial ``x^c`` identically."""
    c = M0.rows
    return pencil_char_poly(M0, M1) == Poly.var(XVAR, c)


@dataclass(frozen=True)
class FixedVerdict:
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"ok": self.ok, "failures": list(self.failures)}


def reduced_equation_residuals(X: AdhmDatum) -> tuple[RatMatrix, RatMatrix, RatMatrix]:
    return (X.A0.commutator(X.B0), X.A1.commutator(X.B1),
            X.A0.commutator(X.B1) + X.A1.commutator(X.B0))


def is_fixed_candidate(X: AdhmDatum) -> FixedVerdict:
    failures = []
    if not (X.J0.is_zero() and X.J1.is_zero()):
        failures.append("J nonzero")
    for k, res in enumerate(reduced_equation_residuals(X), start=1):
        if not res.is_zero():
            failures.append(f"reduced equation {k} fails")
    if not pencil_nilpotent(X.A0, X.A1):
        failures.append("A-pencil not nilpotent")
    if not pencil_nilpotent(X.B0, X.B1):
        failures.append("B-pencil not nilpotent")
    return FixedVerdict(tuple(failures))


def check_sandwich(X: AdhmDatum, L: int) -> bool:
    """True iff every ``J_a A_b^l B_d^m I_e`` with ``l + m <= L`` vanishes."""
    As = (X.A0, X.A1)
    Bs = (X.B0, X.B1)
    Is = (X.I0, X.I1)
    Js = (X.J0, X.J1)
    powA = {(b, l): As[b] ** l for b in range(2) for l in range(L + 1)}
    powB = {(d, m): Bs[d] ** m for d in range(2) for m in range(L + 1)}
    for l in range(L + 1):
        for m in range(L + 1 - l):
            for a, b, d, e in itertools.product(range(2), repeat=4):
                if not (Js[a] @ powA[b, l] @ powB[d, m] @ Is[e]).is_zero():
                    return False
    return True


def nilpotent_pencils_force_dets(X: AdhmDatum) -> bool:
    """If both pencils are nilpotent then the singular-pencil determinants are ``z2^c, z3^c``."""
    from .exact_math import Z2, Z3
    if not (pencil_nilpotent(X.A0, X.A1) and pencil_nilpotent(X.B0, X.B1)):
        return True
    da, db = singular_pencil_dets(X)
    return da == Poly.var(Z2, X.c) and db == Poly.var(Z3, X.c)


# ---------------------------------------------------------------------------
# fixed data from monomial ideals
# ---------------------------------------------------------------------------

def monomial_fixed_datum(boxes: Sequence[tuple[int, int]], r: int = 1, a_index: int = 0,
                         b_index: int = 0, i_index: int = 0) -> AdhmDatum:
    """A torus-fixed datum whose ``A``/``B`` shift along the boxes of a diagram.

    ``V`` has basis the boxes ``(a, b)``; ``A_{a_index}`` sends ``(a, b)`` to
    ``(a + 1, b)``, ``B_{b_index}`` sends it to ``(a, b + 1)`` (zero when the
    target is outside), and ``I_{i_index}`` maps the first framing vector to
    the corner box.  ``J = 0``.
    """
    boxes = sorted(boxes)
    pos = {bx: k for k, bx in enumerate(boxes)}
    c = len(boxes)
    A = [[0] * c for _ in range(c)]
    B = [[0] * c for _ in range(c)]
    for (a, b), k in pos.items():
        if (a + 1, b) in pos:
            A[pos[(a + 1, b)]][k] = 1
        if (a, b + 1) in pos:
            B[pos[(a, b + 1)]][k] = 1
    I = [[0] * r for _ in range(c)]
    I[pos[(0, 0)]][0] = 1
    mats = {f"A{a_index}": A, f"B{b_index}": B, f"I{i_index}": I}
    return AdhmDatum.build(c, r, **mats)


__all__ = [
    "TorusElement", "act", "gauge_witness", "find_witness", "framing_candidates",
    "sample_fixedness", "FixednessReport", "pencil_nilpotent", "pencil_char_poly",
    "is_fixed_candidate", "FixedVerdict", "check_sandwich", "reduced_equation_residuals",
    "nilpotent_pencils_force_dets", "monomial_fixed_datum", "GENERATORS", "DEFAULT_SAMPLES",
    "apply_gauge", "check_equations",
]
