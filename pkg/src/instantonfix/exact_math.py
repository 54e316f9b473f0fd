"""
Exact arithmetic over the rationals.

Everything here is built on :class:`fractions.Fraction`; there is no floating
point anywhere in the package.  The module provides

* :class:`RatMatrix`, an immutable dense matrix with rank, kernel, inverse and
  affine solving by Gaussian elimination,
* :class:`Poly`, a sparse multivariate polynomial whose variables are indexed
  by small integers (see :data:`X`, :data:`Z0` ... :data:`Z3`),
* :class:`PolyMatrix` / :class:`LinFormMatrix`, matrices of polynomials with a
  memoized cofactor determinant,
* :class:`UniPoly`, a dense univariate polynomial used for Hilbert
  polynomials,

plus a handful of helpers (rational roots, JSON encoding of rationals).

    >>> M = RatMatrix.from_rows([[1, 2], [2, 4]])
    >>> mat_rank(M)
    1
    >>> mat_kernel(M)
    [(Fraction(-2, 1), Fraction(1, 1))]
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

__all__ = [
    "Rational", "to_rational", "rational_to_json", "rational_from_json",
    "RatMatrix", "mat_rank", "mat_kernel", "solve_affine",
    "Poly", "X", "Z0", "Z1", "Z2", "Z3", "VAR_NAMES",
    "PolyMatrix", "LinFormMatrix", "det_poly", "char_poly_poly_entries",
    "UniPoly", "twisted_euler_cubic", "rational_roots",
]


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a reduced Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        # Fraction accepts decimals and exponents; only integers and p/q are allowed.
        body = text[1:] if text[0] in "+-" else text
        parts = body.split("/")
        if len(parts) > 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rational_to_json(q: Fraction) -> Union[int, str]:
    """Integers stay integers; everything else becomes ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def rational_from_json(value) -> Fraction:
    return to_rational(value)


# ---------------------------------------------------------------------------
# dense rational matrices
# ---------------------------------------------------------------------------

class RatMatrix:
    """Immutable dense matrix over Q.

    Entries are stored row-major as a tuple of row tuples of Fractions.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[RationalLike]]):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        data = tuple(tuple(to_rational(x) for x in row) for row in data)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[RationalLike]) -> "RatMatrix":
        n = len(values)
        return cls(n, n, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalLike]], rows: int) -> "RatMatrix":
        return cls(rows, len(columns), [[col[i] for col in columns] for i in range(rows)])

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "RatMatrix":
        """Matrix unit E_ij."""
        data = [[0] * cols for _ in range(rows)]
        data[i][j] = 1
        return cls(rows, cols, data)

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self._data[i][j] for i in range(self.rows))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic -------------------------------------------------------
    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, k: RationalLike) -> "RatMatrix":
        k = to_rational(k)
        return RatMatrix(self.rows, self.cols, [[k * a for a in r] for r in self._data])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return self.matmul(other)

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols_other = [other.column(j) for j in range(other.cols)]
        data = [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols_other]
                for r in self._data]
        return RatMatrix(self.rows, other.cols, data)

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._data)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RatMatrix(self.rows, self.cols + other.cols,
                         [r + s for r, s in zip(self._data, other._data)])

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return RatMatrix(self.rows + other.rows, self.cols, self._data + other._data)

    def commutator(self, other: "RatMatrix") -> "RatMatrix":
        return self @ other - other @ self

    def __pow__(self, n: int) -> "RatMatrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = RatMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    # elimination ------------------------------------------------------
    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = [list(r) for r in self._data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            p = next((i for i in range(r, self.rows) if a[i][c] != 0), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self) -> int:
        return mat_rank(self)

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self._data]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    f = a[i][c] / a[c][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det

    def inverse(self) -> "RatMatrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = self.hstack(RatMatrix.identity(n))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return RatMatrix(n, n, [row[n:] for row in red])

    # comparison / serialization ---------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def to_json(self) -> list[list]:
        return [[rational_to_json(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, rows, shape: tuple[int, int] | None = None) -> "RatMatrix":
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError("matrix must be a list of lists")
        if shape is None:
            return cls.from_rows(rows)
        return cls(shape[0], shape[1], rows)

    def __repr__(self) -> str:
        return f"RatMatrix({self.to_json()!r})"


def mat_rank(M: RatMatrix) -> int:
    """Rank over Q by exact elimination."""
    return len(M.rref()[1])


def mat_kernel(M: RatMatrix) -> list[tuple[Fraction, ...]]:
    """A basis of the right null space, one vector per free column."""
    red, pivots = M.rref()
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve_affine(M: RatMatrix, b: Sequence[RationalLike]):
    """Solve ``M x = b``.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    """
    b = [to_rational(x) for x in b]
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    aug = M.hstack(RatMatrix(M.rows, 1, [[x] for x in b]))
    red, pivots = aug.rref()
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for i, p in enumerate(pivots):
        x[p] = red[i][M.cols]
    return tuple(x), mat_kernel(M)


# ---------------------------------------------------------------------------
# multivariate polynomials
# ---------------------------------------------------------------------------

X, Z0, Z1, Z2, Z3 = range(5)
VAR_NAMES = ("x", "z0", "z1", "z2", "z3")


def _trim(exps: Iterable[int]) -> tuple[int, ...]:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _add_exps(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


class Poly:
    """Sparse polynomial over Q.

    Monomials are exponent tuples with trailing zeros removed, so variable
    ``k`` may be any non-negative integer.  Indices 0..4 are reserved for
    ``x, z0, z1, z2, z3``; callers needing auxiliary symbols use higher
    indices.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = to_rational(coeff)
                if coeff != 0:
                    key = _trim(mono)
                    clean[key] = clean.get(key, Fraction(0)) + coeff
                    if clean[key] == 0:
                        del clean[key]
        self.terms = clean

    @classmethod
    def const(cls, c: RationalLike) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, k: int, power: int = 1) -> "Poly":
        mono = [0] * (k + 1)
        mono[k] = power
        return cls({tuple(mono): 1})

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, k: int) -> int:
        if not self.terms:
            return -1
        return max((m[k] if k < len(m) else 0) for m in self.terms)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def coeff(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(_trim(mono), Fraction(0))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _add_exps(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def subs(self, values: dict[int, RationalLike]) -> "Poly":
        """Substitute rational values for some variables."""
        values = {k: to_rational(v) for k, v in values.items()}
        out: dict[tuple[int, ...], Fraction] = {}
        for mono, c in self.terms.items():
            coeff = c
            rest = list(mono)
            for k, v in values.items():
                if k < len(rest) and rest[k]:
                    coeff *= v ** rest[k]
                    rest[k] = 0
            key = _trim(rest)
            out[key] = out.get(key, Fraction(0)) + coeff
        return Poly(out)

    def evaluate(self, values: dict[int, RationalLike]) -> Fraction:
        p = self.subs(values)
        if p.variables():
            raise ValueError("not all variables were substituted")
        return p.terms.get((), Fraction(0))

    def coefficients_in(self, k: int) -> dict[int, "Poly"]:
        """Split as ``sum_j c_j * var_k**j`` with coefficients free of var k."""
        out: dict[int, dict] = {}
        for mono, c in self.terms.items():
            j = mono[k] if k < len(mono) else 0
            rest = list(mono)
            if k < len(rest):
                rest[k] = 0
            out.setdefault(j, {})[_trim(rest)] = c
        return {j: Poly(t) for j, t in out.items()}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(mono):
                if e:
                    name = VAR_NAMES[i] if i < len(VAR_NAMES) else f"s{i - len(VAR_NAMES)}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


class PolyMatrix:
    """Dense matrix with :class:`Poly` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        data = tuple(tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        self.rows, self.cols, self._data = rows, cols, data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix":
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    @classmethod
    def from_ratmatrix(cls, M: RatMatrix, var: int | None = None) -> "PolyMatrix":
        """Embed ``M`` (times the variable ``var`` if given)."""
        v = Poly.var(var) if var is not None else Poly.const(1)
        return cls(M.rows, M.cols, [[v * M[i, j] for j in range(M.cols)] for i in range(M.rows)])

    @classmethod
    def scalar_identity(cls, n: int, p: Poly) -> "PolyMatrix":
        return cls(n, n, [[p if i == j else Poly() for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def tolist(self):
        return [list(r) for r in self._data]

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return type(self)(self.rows, self.cols,
                          [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "PolyMatrix":
        return type(self)(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        data = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly()
                for k in range(self.cols):
                    a, b = self._data[i][k], other._data[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            data.append(row)
        return PolyMatrix(self.rows, other.cols, data)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self._data for e in r)

    def subs(self, values: dict[int, RationalLike]) -> "PolyMatrix":
        return type(self)(self.rows, self.cols, [[e.subs(values) for e in r] for r in self._data])

    def to_ratmatrix(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, [[e.evaluate({}) for e in r] for r in self._data])

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        return f"{type(self).__name__}({[[str(e) for e in r] for r in self._data]})"


class LinFormMatrix(PolyMatrix):
    """Matrix of linear forms in z0..z3 (the entries of the monad maps)."""

    __slots__ = ()

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        super().__init__(rows, cols, data)
        for r in self._data:
            for e in r:
                if e.total_degree() > 1 or any(v not in (Z0, Z1, Z2, Z3) for v in e.variables()):
                    raise ValueError(f"entry {e} is not a form of degree <= 1 in z0..z3")


def det_poly(M: PolyMatrix | Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    rows = M.tolist() if isinstance(M, PolyMatrix) else [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Poly.const(1)
    memo: dict[int, Poly] = {}

    def minor(row: int, colmask: int) -> Poly:
        # determinant of rows[row:] restricted to the columns in colmask
        if row == n:
            return Poly.const(1)
        if colmask in memo:
            return memo[colmask]
        acc = Poly()
        sign = 1
        for c in range(n):
            if not colmask >> c & 1:
                continue
            entry = rows[row][c]
            if entry.terms:
                sub = minor(row + 1, colmask & ~(1 << c))
                if sub.terms:
                    term = entry * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[colmask] = acc
        return acc

    return minor(0, (1 << n) - 1)


def char_poly_poly_entries(M: PolyMatrix | Sequence[Sequence]) -> Poly:
    """``det(x*Id - M)`` for a square matrix with polynomial entries.

    The result is a polynomial in ``x`` (variable :data:`X`) whose
    coefficients are polynomials in whatever variables appear in ``M``.
    ``M`` must not itself involve ``x``.
    """
    P = M if isinstance(M, PolyMatrix) else PolyMatrix.from_rows(M)
    if P.rows != P.cols:
        raise ValueError(f"characteristic polynomial of a non-square {P.rows}x{P.cols} matrix")
    if any(X in e.variables() for r in P.tolist() for e in r):
        raise ValueError("matrix entries must not involve the variable x")
    n = P.rows
    xI = PolyMatrix.scalar_identity(n, Poly.var(X))
    return det_poly(xI - P)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, value: RationalLike) -> Fraction:
        v = to_rational(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def shift(self, k: RationalLike) -> "UniPoly":
        """The polynomial ``m -> p(m + k)``."""
        result = UniPoly()
        lin = UniPoly([k, 1])
        for c in reversed(self.coeffs):
            result = result * lin + c
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        lead = other.coeffs[-1]
        for i in range(len(q) - 1, -1, -1):
            f = rem[i + other.degree] / lead
            q[i] = f
            for j, c in enumerate(other.coeffs):
                rem[i + j] -= f * c
        return UniPoly(q), UniPoly(rem)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_json(self) -> list:
        return [rational_to_json(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"UniPoly({[rational_to_json(c) for c in self.coeffs]})"

    def format(self, var: str = "m") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")


def twisted_euler_cubic(k: int) -> UniPoly:
    """``chi(O_P3(m + k)) = (m+k+1)(m+k+2)(m+k+3)/6`` as a polynomial in m."""
    return UniPoly([k + 1, 1]) * UniPoly([k + 2, 1]) * UniPoly([k + 3, 1]) * Fraction(1, 6)


def _primitive_ints(p: UniPoly) -> list[int]:
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in p.coeffs), 1)
    ints = [int(c * lcm) for c in p.coeffs]
    g = reduce(math.gcd, ints)
    return [a // g for a in ints]


def _poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    while not g.is_zero():
        f, g = g, f.divmod(g)[1]
    return f


def _sign_changes(seq: Sequence[UniPoly], x: Fraction) -> int:
    signs = [v for v in (q(x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _squarefree_rational_roots(p: UniPoly) -> list[Fraction]:
    """Rational roots of ``p`` by exact real-root isolation.

    The square-free part is isolated with a Sturm sequence down to intervals
    narrower than ``1 / lead^2``; two distinct rationals whose denominators
    divide ``lead`` are farther apart than that, so the best approximation
    with denominator at most ``|lead|`` is the only possible rational root
    in each interval.  Each candidate is then tested exactly.
    """
    deriv = UniPoly([i * c for i, c in enumerate(p.coeffs)][1:])
    sq = p.divmod(_poly_gcd(p, deriv))[0]
    if sq.degree < 1:
        return []
    ints = _primitive_ints(sq)
    sq = UniPoly(ints)
    lead = abs(ints[-1])
    width = Fraction(1, 2 * lead * lead)
    bound = 1 + max(Fraction(abs(a), lead) for a in ints[:-1])
    seq = [sq, UniPoly([i * c for i, c in enumerate(sq.coeffs)][1:])]
    while seq[-1].degree > 0:
        r = seq[-2].divmod(seq[-1])[1]
        if r.is_zero():
            break
        seq.append(-r)
    found: list[Fraction] = []
    stack = [(-bound, bound, _sign_changes(seq, -bound), _sign_changes(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi  # roots in (lo, hi]
        if count <= 0:
            continue
        if count == 1 and hi - lo < width:
            cand = ((lo + hi) / 2).limit_denominator(lead)
            if lo < cand <= hi and sq(cand) == 0:
                found.append(cand)
            continue
        mid = (lo + hi) / 2
        vmid = _sign_changes(seq, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    return sorted(found)


def rational_roots(p: UniPoly) -> tuple[list[Fraction], bool]:
    """Rational roots with multiplicity, and whether ``p`` splits over Q.

    Candidates come from exact Sturm isolation of the real roots.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    roots: list[Fraction] = []
    rest = p
    while rest.degree > 0 and rest.coeffs[0] == 0:
        roots.append(Fraction(0))
        rest = UniPoly(rest.coeffs[1:])
    for root in (_squarefree_rational_roots(rest) if rest.degree > 0 else []):
        while True:
            q, r = rest.divmod(UniPoly([-root, 1]))
            if not r.is_zero():
                break
            roots.append(root)
            rest = q
    return sorted(roots), rest.degree == 0
