"""
ADHM data for framed instanton sheaves on P3.

A datum ``X = (A0, A1, B0, B1, I0, I1, J0, J1)`` lives in
``End(V)^4 + Hom(W, V)^2 + Hom(V, W)^2`` with ``dim V = c`` and ``dim W = r``.
This module checks the quadratic equations, applies the gauge group
``GL(V)``, builds the monad maps, and tests the two stability notions.

Nothing is enforced at construction: a datum with the wrong equations is a
perfectly good value, so that negative cases can be exercised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact_math import (
    X as XVAR, Z0, Z1, Z2, Z3,
    LinFormMatrix, Poly, PolyMatrix, RatMatrix, UniPoly,
    char_poly_poly_entries, det_poly, mat_kernel, mat_rank, rational_roots,
    rational_to_json, to_rational, twisted_euler_cubic,
)

MATRIX_FIELDS = ("A0", "A1", "B0", "B1", "I0", "I1", "J0", "J1")


class SchemaError(ValueError):
    """Raised when ADHM JSON has the wrong structure or dimensions."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass(frozen=True)
class AdhmDatum:
    c: int
    r: int
    A0: RatMatrix
    A1: RatMatrix
    B0: RatMatrix
    B1: RatMatrix
    I0: RatMatrix
    I1: RatMatrix
    J0: RatMatrix
    J1: RatMatrix

    def __post_init__(self):
        expected = self.expected_shapes()
        for name in MATRIX_FIELDS:
            m = getattr(self, name)
            if m.shape != expected[name]:
                raise SchemaError(name, f"expected shape {expected[name]}, got {m.shape}")

    def expected_shapes(self) -> dict[str, tuple[int, int]]:
        c, r = self.c, self.r
        return {"A0": (c, c), "A1": (c, c), "B0": (c, c), "B1": (c, c),
                "I0": (c, r), "I1": (c, r), "J0": (r, c), "J1": (r, c)}

    @classmethod
    def zero(cls, c: int, r: int) -> "AdhmDatum":
        Z = RatMatrix.zeros
        return cls(c, r, Z(c, c), Z(c, c), Z(c, c), Z(c, c), Z(c, r), Z(c, r), Z(r, c), Z(r, c))

    @classmethod
    def build(cls, c: int, r: int, **mats) -> "AdhmDatum":
        """Like :meth:`zero` but with the given matrices filled in."""
        base = cls.zero(c, r)
        values = {name: getattr(base, name) for name in MATRIX_FIELDS}
        for name, m in mats.items():
            if name not in values:
                raise KeyError(name)
            values[name] = m if isinstance(m, RatMatrix) else RatMatrix.from_rows(m, cols=values[name].cols)
        return cls(c, r, **values)

    def matrices(self) -> dict[str, RatMatrix]:
        return {name: getattr(self, name) for name in MATRIX_FIELDS}

    def replace(self, **mats) -> "AdhmDatum":
        values = self.matrices()
        values.update(mats)
        return AdhmDatum(self.c, self.r, **values)

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        out = {"c": self.c, "r": self.r}
        for name in MATRIX_FIELDS:
            out[name] = getattr(self, name).to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "AdhmDatum":
        """Parse the ADHM JSON schema, reporting the offending field path."""
        if not isinstance(obj, dict):
            raise SchemaError("$", "top level must be an object")
        for key in ("c", "r"):
            if key not in obj:
                raise SchemaError(f"$.{key}", "missing field")
            if not isinstance(obj[key], int) or isinstance(obj[key], bool) or obj[key] < 1:
                raise SchemaError(f"$.{key}", "must be a positive integer")
        c, r = obj["c"], obj["r"]
        shapes = cls.zero(c, r).expected_shapes()
        mats = {}
        for name in MATRIX_FIELDS:
            path = f"$.{name}"
            if name not in obj:
                raise SchemaError(path, "missing field")
            rows = obj[name]
            rws, cls_ = shapes[name]
            if not isinstance(rows, list) or any(not isinstance(row, list) for row in rows):
                raise SchemaError(path, "must be a list of rows")
            if len(rows) != rws:
                raise SchemaError(path, f"expected {rws} rows, got {len(rows)}")
            parsed = []
            for i, row in enumerate(rows):
                if len(row) != cls_:
                    raise SchemaError(f"{path}[{i}]", f"expected {cls_} entries, got {len(row)}")
                prow = []
                for j, entry in enumerate(row):
                    try:
                        if isinstance(entry, bool) or not isinstance(entry, (int, str)):
                            raise TypeError("rational must be an integer or a 'p/q' string")
                        prow.append(to_rational(entry))
                    except (TypeError, ValueError, ZeroDivisionError) as exc:
                        raise SchemaError(f"{path}[{i}][{j}]", str(exc)) from None
                parsed.append(prow)
            mats[name] = RatMatrix(rws, cls_, parsed)
        return cls(c, r, **mats)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# equations
# ---------------------------------------------------------------------------

def equation_residuals(X: AdhmDatum) -> tuple[RatMatrix, RatMatrix, RatMatrix]:
    """Left-hand sides of the three quadratic equations.

    The mixed equation is the z0*z1 coefficient of ``beta . alpha``, namely
    ``[A0, B1] + [A1, B0] + I0 J1 + I1 J0``.
    """
    e1 = X.A0.commutator(X.B0) + X.I0 @ X.J0
    e2 = X.A1.commutator(X.B1) + X.I1 @ X.J1
    e3 = X.A0.commutator(X.B1) + X.A1.commutator(X.B0) + X.I0 @ X.J1 + X.I1 @ X.J0
    return e1, e2, e3


@dataclass(frozen=True)
class EquationVerdict:
    violations: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"ok": self.ok, "violations": list(self.violations)}


def check_equations(X: AdhmDatum) -> EquationVerdict:
    """Report which of the equations 1, 2, 3 fail (empty tuple when all hold)."""
    bad = tuple(i + 1 for i, e in enumerate(equation_residuals(X)) if not e.is_zero())
    return EquationVerdict(bad)


# ---------------------------------------------------------------------------
# gauge action
# ---------------------------------------------------------------------------

def apply_gauge(X: AdhmDatum, g: RatMatrix) -> AdhmDatum:
    """``(g A g^-1, g B g^-1, g I, J g^-1)``; raises ``ValueError`` if g is singular."""
    if g.shape != (X.c, X.c):
        raise ValueError(f"gauge element must be {X.c}x{X.c}")
    gi = g.inverse()
    return AdhmDatum(
        X.c, X.r,
        g @ X.A0 @ gi, g @ X.A1 @ gi, g @ X.B0 @ gi, g @ X.B1 @ gi,
        g @ X.I0, g @ X.I1, X.J0 @ gi, X.J1 @ gi,
    )


# ---------------------------------------------------------------------------
# monad
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonadPair:
    alpha: LinFormMatrix
    beta: LinFormMatrix


def _pencil(M0: RatMatrix, M1: RatMatrix, extra_var: Optional[int] = None, sign: int = 1) -> list[list[Poly]]:
    z0, z1 = Poly.var(Z0), Poly.var(Z1)
    rows = []
    for i in range(M0.rows):
        row = []
        for j in range(M0.cols):
            e = z0 * M0[i, j] + z1 * M1[i, j]
            if extra_var is not None and i == j:
                e = e + Poly.var(extra_var)
            row.append(e * sign)
        rows.append(row)
    return rows


def build_monad(X: AdhmDatum) -> MonadPair:
    """The maps ``alpha: V(-1) -> V+V+W`` and ``beta: V+V+W -> V(1)``."""
    a_rows = _pencil(X.A0, X.A1, Z2) + _pencil(X.B0, X.B1, Z3) + _pencil(X.J0, X.J1)
    alpha = LinFormMatrix(2 * X.c + X.r, X.c, a_rows)
    minus_b = _pencil(X.B0, X.B1, Z3, sign=-1)
    plus_a = _pencil(X.A0, X.A1, Z2)
    i_pen = _pencil(X.I0, X.I1)
    b_rows = [minus_b[i] + plus_a[i] + i_pen[i] for i in range(X.c)]
    beta = LinFormMatrix(X.c, 2 * X.c + X.r, b_rows)
    return MonadPair(alpha, beta)


def complex_condition(M: MonadPair) -> bool:
    """True iff ``beta . alpha`` vanishes as a matrix of quadratic forms."""
    return (M.beta @ M.alpha).is_zero()


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------

def _span_basis(vectors: Sequence[Sequence[Fraction]], n: int) -> list[tuple[Fraction, ...]]:
    """Row-reduced basis of the span of ``vectors`` in Q^n."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    red, pivots = RatMatrix(len(vectors), n, vectors).rref()
    return [tuple(red[i]) for i in range(len(pivots))]


def image_basis(*mats: RatMatrix) -> list[tuple[Fraction, ...]]:
    cols = [m.column(j) for m in mats for j in range(m.cols)]
    n = mats[0].rows
    return _span_basis(cols, n)


@dataclass(frozen=True)
class ClosureVerdict:
    stable: bool
    closure_dim: int

    def to_json(self):
        return {"stable": self.stable, "closure_dim": self.closure_dim}


def stability_closure(X: AdhmDatum) -> ClosureVerdict:
    """Smallest subspace containing Im I0 + Im I1 and stable under A0, A1, B0, B1."""
    ops = (X.A0, X.A1, X.B0, X.B1)
    basis = image_basis(X.I0, X.I1)
    while True:
        grown = basis + [op.apply(v) for v in basis for op in ops]
        new_basis = _span_basis(grown, X.c)
        if len(new_basis) == len(basis):
            break
        basis = new_basis
    return ClosureVerdict(len(basis) == X.c, len(basis))


@dataclass(frozen=True)
class WeakStabilityVerdict:
    status: str  # "weakly_stable" | "destabilizing_line" | "indeterminate"
    line: Optional[tuple[Fraction, ...]] = None
    reason: str = ""

    def to_json(self):
        out = {"status": self.status}
        if self.line is not None:
            out["line"] = [rational_to_json(x) for x in self.line]
        if self.reason:
            out["reason"] = self.reason
        return out


def _is_invariant_line(v: Sequence[Fraction], ops: Sequence[RatMatrix]) -> bool:
    for op in ops:
        w = op.apply(v)
        if mat_rank(RatMatrix.from_rows([list(v), list(w)])) > 1:
            return False
    return True


def _rat_char_poly(M: RatMatrix) -> UniPoly:
    P = char_poly_poly_entries(PolyMatrix.from_ratmatrix(M))
    parts = P.coefficients_in(XVAR)
    return UniPoly([parts[k].evaluate({}) if k in parts else 0 for k in range(M.rows + 1)])


def weak_stability(X: AdhmDatum) -> WeakStabilityVerdict:
    """Search for a line ``S`` with ``A_i S, B_i S, Im I_i`` inside ``S``.

    Only proper subspaces count, so ``c = 1`` is always weakly stable.
    When ``Im I = 0`` a common eigenvector is searched over Q; if some
    characteristic polynomial does not split over Q and nothing rational was
    found the answer is ``indeterminate``.
    """
    ops = (X.A0, X.A1, X.B0, X.B1)
    if X.c == 1:
        return WeakStabilityVerdict("weakly_stable", reason="no proper line in a 1-dimensional space")
    img = image_basis(X.I0, X.I1)
    if len(img) >= 2:
        return WeakStabilityVerdict("weakly_stable", reason="Im I has dimension >= 2")
    if len(img) == 1:
        v = img[0]
        if _is_invariant_line(v, ops):
            return WeakStabilityVerdict("destabilizing_line", v)
        return WeakStabilityVerdict("weakly_stable", reason="the line Im I is not invariant")
    # Im I = 0: common eigenvectors of the four endomorphisms
    all_split = True
    subspaces: list[list[tuple[Fraction, ...]]] = [[tuple(RatMatrix.identity(X.c).row(i)) for i in range(X.c)]]
    for op in ops:
        roots, splits = rational_roots(_rat_char_poly(op))
        all_split = all_split and splits
        nxt = []
        for U in subspaces:
            for lam in sorted(set(roots)):
                W = _intersect(U, mat_kernel(op - RatMatrix.identity(X.c).scale(lam)), X.c)
                if W:
                    nxt.append(W)
        subspaces = nxt
        if not subspaces:
            break
    if subspaces:
        return WeakStabilityVerdict("destabilizing_line", subspaces[0][0])
    if all_split:
        return WeakStabilityVerdict("weakly_stable", reason="no common rational eigenvector")
    return WeakStabilityVerdict("indeterminate", reason="a characteristic polynomial does not split over Q")


def _intersect(U: Sequence[Sequence[Fraction]], W: Sequence[Sequence[Fraction]], n: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``span(U) & span(W)``."""
    if not U or not W:
        return []
    # solve sum a_i u_i - sum b_j w_j = 0
    cols = [list(u) for u in U] + [[-x for x in w] for w in W]
    M = RatMatrix.from_columns(cols, n)
    out = []
    for k in mat_kernel(M):
        v = [sum((k[i] * U[i][t] for i in range(len(U))), Fraction(0)) for t in range(n)]
        out.append(v)
    return _span_basis(out, n)


# ---------------------------------------------------------------------------
# Hilbert polynomial and singular pencils
# ---------------------------------------------------------------------------

def hilbert_poly_E(c: int, r: int) -> UniPoly:
    """``(2c + r) chi(O(m)) - c chi(O(m - 1)) - c chi(O(m + 1))`` by additivity on the monad."""
    if c < 0:
        raise ValueError("charge must be non-negative")
    return (twisted_euler_cubic(0) * (2 * c + r)
            - twisted_euler_cubic(-1) * c
            - twisted_euler_cubic(1) * c)


def hilbert_poly_E_rank2_closed(c: int) -> UniPoly:
    """The closed cubic ``m^3/3 + 2m^2 + (11/3 - c)m + (2 - 2c)`` for rank 2."""
    return UniPoly([2 - 2 * c, Fraction(11, 3) - c, 2, Fraction(1, 3)])


def singular_pencil_dets(X: AdhmDatum) -> tuple[Poly, Poly]:
    """``det(A0 z0 + A1 z1 + z2 Id)`` and ``det(B0 z0 + B1 z1 + z3 Id)``."""
    return (det_poly(_pencil(X.A0, X.A1, Z2)), det_poly(_pencil(X.B0, X.B1, Z3)))
