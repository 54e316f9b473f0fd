"""
Moduli-level numerics: partition counts, Euler pairings on P3 and the
Poincare polynomial of the charge-1 moduli space.

Chow classes on ``P3`` are truncated at ``H^4 = 0`` and stored as the four
rational coefficients of ``1, H, H^2, H^3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact_math import to_rational
from .young_monomial import Partition, partitions_of


@dataclass(frozen=True)
class ChowClass:
    """Element ``r + c1 H + c2 H^2 + c3 H^3`` of ``A*(P3) ⊗ Q``."""

    r: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("r", "c1", "c2", "c3"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "ChowClass":
        coeffs = list(coeffs)[:4] + [0] * (4 - min(4, len(coeffs)))
        return cls(*coeffs)

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.r, self.c1, self.c2, self.c3)

    def __add__(self, other: "ChowClass") -> "ChowClass":
        return ChowClass(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ChowClass":
        return ChowClass(*(-a for a in self.coeffs))

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return self + (-other)

    def __mul__(self, other) -> "ChowClass":
        if not isinstance(other, ChowClass):
            k = to_rational(other)
            return ChowClass(*(k * a for a in self.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * 4
        for i in range(4):
            for j in range(4 - i):
                out[i + j] += a[i] * b[j]
        return ChowClass(*out)

    __rmul__ = __mul__

    def dual(self) -> "ChowClass":
        """Negate the odd-degree components (Chern character of the dual)."""
        return ChowClass(self.r, -self.c1, self.c2, -self.c3)

    def degree(self) -> Fraction:
        """The ``H^3`` coefficient, i.e. integration over ``P3``."""
        return self.c3

    def to_json(self):
        return [str(a) for a in self.coeffs]


TODD_P3 = ChowClass(1, 2, Fraction(11, 6), 1)
ONE = ChowClass(1)


def exp_hyperplane(m) -> ChowClass:
    """``ch(O(m)) = exp(mH)`` truncated at degree 3."""
    m = to_rational(m)
    return ChowClass(1, m, m ** 2 / 2, m ** 3 / 6)


def chi(E: ChowClass) -> Fraction:
    """Holomorphic Euler characteristic ``∫ ch(E) td(P3)``."""
    return (E * TODD_P3).degree()


def euler_pairing(E: ChowClass, F: ChowClass) -> Fraction:
    """``χ(E, F) = ∫ ch(E)^∨ ch(F) td(P3)``."""
    return chi(E.dual() * F)


def twisted_chi(E: ChowClass, m) -> Fraction:
    return chi(E * exp_hyperplane(m))


def ch_line_sheaf(d: int) -> ChowClass:
    """Chern character of ``O_l(d)`` for a line ``l ⊂ P3``.

    The support class is ``H^2``; the top coefficient is the unique value
    making ``χ(ch ⊗ O(m)) = m + d + 1``.  The condition is affine in that
    coefficient with unit slope, so one evaluation at ``m = 0`` fixes it.
    """
    trial = ChowClass(0, 0, 1, 0)
    x = Fraction(d + 1) - twisted_chi(trial, 0)
    return ChowClass(0, 0, 1, x)


def ch_line_bundle(a: int) -> ChowClass:
    return exp_hyperplane(a)


# ---------------------------------------------------------------- partitions

@lru_cache(maxsize=None)
def _count_bounded(n: int, k: int) -> int:
    """Partitions of ``n`` with every part at most ``k``."""
    if n == 0:
        return 1
    if n < 0 or k == 0:
        return 0
    return _count_bounded(n - k, k) + _count_bounded(n, k - 1)


def partition_count_recursive(c: int) -> int:
    return _count_bounded(c, c)


def partition_count_euler(c: int) -> int:
    """Coefficient of ``x^c`` in ``prod_{k<=c} 1/(1-x^k)``."""
    series = [1] + [0] * c
    for k in range(1, c + 1):
        # multiply by 1/(1 - x^k) in place
        for n in range(k, c + 1):
            series[n] += series[n - k]
    return series[c]


def partition_count(c: int) -> int:
    """Number of partitions of ``c``, cross-checked by two methods.

    Raises
    ------
    ArithmeticError
        if the recursion and the Euler product disagree.
    """
    if c < 0:
        raise ValueError("c must be nonnegative")
    a, b = partition_count_recursive(c), partition_count_euler(c)
    if a != b:
        raise ArithmeticError(f"partition counts disagree at c={c}: {a} != {b}")
    return a


def component_split(c: int) -> list[Partition]:
    """The diagrams indexing the pieces ``M(ν)`` of the fixed locus."""
    return list(partitions_of(c))


def component_lower_bound(c: int) -> int:
    if c < 1:
        raise ValueError("charge must be >= 1")
    return partition_count(c)


def refined_component_count_c3() -> int:
    """Count of charge-3 filtration cases over all three diagrams.

    Each case is one solver output; the two primitive diagrams ``(3)`` and
    ``(1,1,1)`` are the two orientations of the same curve type.
    """
    from .filtration_solver import solve

    return sum(len(solve(Partition(p)).cases) for p in ((1, 1, 1), (3,), (2, 1)))


# ---------------------------------------------------------------- polynomials

@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in ``t`` with ascending coefficients."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        cs = [int(a) for a in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "IntPoly":
        return cls([0] * k + [a])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    def __call__(self, t):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def divmod(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division by a divisor with leading coefficient ``±1``."""
        lead = divisor.coeffs[-1] if divisor.coeffs else 0
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient ±1")
        rem = list(self.coeffs)
        dd = divisor.degree()
        quot = [0] * max(0, len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            q = rem[k] * lead
            quot[k - dd] = q
            for j, b in enumerate(divisor.coeffs):
                rem[k - dd + j] -= q * b
        return IntPoly(quot), IntPoly(rem)

    def format(self, var: str = "t") -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mon = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if i == 0:
                terms.append(str(a))
            else:
                terms.append(mon if a == 1 else f"{a}*{mon}")
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return list(self.coeffs)


SL2_FACTOR = IntPoly([1, 0, 0, 1])


def projective_space_poly(n: int) -> IntPoly:
    """Poincare polynomial of ``P^n`` in real degrees: ``sum t^{2i}``."""
    return IntPoly([1 if i % 2 == 0 else 0 for i in range(2 * n + 1)])


def poincare_poly_c1() -> IntPoly:
    """Poincare polynomial of the charge-1 moduli space, ``P(P5) · (1 + t^3)``."""
    return projective_space_poly(5) * SL2_FACTOR


def delta_formula_c1() -> IntPoly:
    """Coefficient list ``1`` on ``0..13`` except at ``t^1`` and ``t^12``."""
    return IntPoly([0 if i in (1, 12) else 1 for i in range(14)])


def euler_char_vanishing(factor_poly: IntPoly) -> bool:
    return factor_poly(-1) == 0


def poincare_claim(c: int) -> dict:
    """Poincare data for charge ``c``; explicit only for ``c = 1``."""
    if c == 1:
        P = poincare_poly_c1()
        return {
            "charge": 1,
            "poincare": P.to_json(),
            "formula": P.format(),
            "euler_characteristic": P(-1),
        }
    return {
        "charge": c,
        "poincare": None,
        "formula": f"P_Ibar({c})(t) * ({SL2_FACTOR.format()})",
        "euler_characteristic": 0,
    }


def pairing_demo() -> dict:
    """Euler pairings of the charge-1 quotient ``Q = O_l(1)`` and ``I• = [O -> Q]``."""
    Q = ch_line_sheaf(1)
    I = ONE - Q
    return {
        "ch_Q": Q.to_json(),
        "ch_I": I.to_json(),
        "todd": TODD_P3.to_json(),
        "chi_O_O": str(euler_pairing(ONE, ONE)),
        "chi_Q_Q": str(euler_pairing(Q, Q)),
        "chi_I_Q": str(euler_pairing(I, Q)),
    }
