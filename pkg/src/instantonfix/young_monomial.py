"""
Young diagrams and Cohen-Macaulay monomial ideals supported on the line ``z2 = z3 = 0``.

Conventions
-----------
A box ``(a, b)`` stands for the monomial ``z2^a z3^b`` in the quotient basis
and has weight ``a + b``.  Part ``nu_{b+1}`` is the height of column ``b``, so
the diagram of ``nu`` is ``{(a, b) : a < nu_{b+1}}``.  With this convention
``(1, 1, ..., 1)`` (c parts) is the ideal ``<z2, z3^c>``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .exact_math import RatMatrix, UniPoly, mat_rank, twisted_euler_cubic

Box = tuple[int, int]


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing positive parts; the charge is their sum."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,3,2"``."""
        try:
            parts = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
        except ValueError as exc:
            raise ValueError(f"cannot parse partition {text!r}") from exc
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def charge(self) -> int:
        return sum(self.parts)

    def boxes(self) -> list[Box]:
        return [(a, b) for b, h in enumerate(self.parts) for a in range(h)]

    def weights(self) -> list[int]:
        return sorted(a + b for a, b in self.boxes())

    def column_heights(self) -> tuple[int, ...]:
        return self.parts

    def transpose(self) -> "Partition":
        return Partition(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))

    def is_primitive(self) -> bool:
        """Single row or single column."""
        return len(self.parts) == 1 or self.parts[0] == 1

    def to_json(self) -> list[int]:
        return list(self.parts)


def partitions_of(c: int) -> Iterator[Partition]:
    """All partitions of ``c`` in lexicographically descending order."""
    if c < 1:
        return

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(c, c):
        yield Partition(parts)


def partition_from_boxes(boxes: Iterable[Box]) -> Partition:
    """Read a diagram back as column heights; the box set must be a staircase."""
    boxes = set(boxes)
    heights: list[int] = []
    b = 0
    while any(bb == b for _, bb in boxes):
        heights.append(sum(1 for _, bb in boxes if bb == b))
        b += 1
    p = Partition(heights)
    if set(p.boxes()) != boxes:
        raise ValueError("box set is not a Young diagram")
    return p


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

def _minimalize(gens: Iterable[Box]) -> tuple[Box, ...]:
    gens = set(gens)
    keep = [g for g in gens
            if not any(h != g and h[0] <= g[0] and h[1] <= g[1] for h in gens)]
    return tuple(sorted(keep))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal in ``z2, z3``; a generator ``(a, b)`` is ``z2^a z3^b``."""

    generators: tuple[Box, ...]

    def __init__(self, generators: Iterable[Box]):
        object.__setattr__(self, "generators", _minimalize((int(a), int(b)) for a, b in generators))

    def contains(self, mono: Box) -> bool:
        return any(mono[0] >= a and mono[1] >= b for a, b in self.generators)

    def is_cofinite(self) -> bool:
        return any(b == 0 for _, b in self.generators) and any(a == 0 for a, _ in self.generators)

    def __str__(self) -> str:
        def mono(a: int, b: int) -> str:
            out = []
            if a:
                out.append("z2" if a == 1 else f"z2^{a}")
            if b:
                out.append("z3" if b == 1 else f"z3^{b}")
            return "*".join(out) or "1"
        ordered = sorted(self.generators, reverse=True)
        return "<" + ", ".join(mono(a, b) for a, b in ordered) + ">"

    def to_json(self) -> list[list[int]]:
        return [[a, b] for a, b in self.generators]


def partition_to_ideal(nu: Partition) -> MonomialIdeal:
    """Minimal monomials outside the diagram of ``nu``."""
    h = list(nu.parts) + [0]
    gens = [(h[b], b) for b in range(len(h)) if b == 0 or h[b] < h[b - 1]]
    return MonomialIdeal(gens)


def ideal_to_partition(ideal: MonomialIdeal | Iterable[Box]) -> Partition:
    if not isinstance(ideal, MonomialIdeal):
        ideal = MonomialIdeal(ideal)
    if not ideal.generators or not ideal.is_cofinite():
        raise ValueError(f"not a multiple-line ideal: {ideal} has an infinite complement")
    A = max(a for a, _ in ideal.generators)
    B = max(b for _, b in ideal.generators)
    boxes = [(a, b) for a in range(A) for b in range(B) if not ideal.contains((a, b))]
    if not boxes:
        raise ValueError(f"not a multiple-line ideal: {ideal} is the unit ideal")
    return partition_from_boxes(boxes)


# ---------------------------------------------------------------------------
# boxes and resolutions
# ---------------------------------------------------------------------------

def inner_outer_boxes(nu: Partition) -> tuple[list[int], list[int]]:
    """Weights of minimal generators and of the syzygies between neighbouring generators."""
    gens = partition_to_ideal(nu).generators  # sorted by z2-exponent, z3-exponent decreasing
    inner = sorted(a + b for a, b in gens)
    outer = sorted(gens[i + 1][0] + gens[i][1] for i in range(len(gens) - 1))
    return inner, outer


def outer_corners(nu: Partition) -> list[Box]:
    """Outside positions whose left and lower neighbours are outside and whose diagonal neighbour is inside."""
    inside = set(nu.boxes())
    out = []
    for a in range(1, nu.parts[0] + 1):
        for b in range(1, len(nu) + 1):
            if ((a, b) not in inside and (a - 1, b) not in inside and (a, b - 1) not in inside
                    and (a - 1, b - 1) in inside):
                out.append((a, b))
    return sorted(out)


@dataclass(frozen=True)
class FreeResolution:
    """``0 -> sum O(-n2) -> sum O(-n1) -> I -> 0``."""

    inner_weights: tuple[int, ...]
    outer_weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.inner_weights) != len(self.outer_weights) + 1:
            raise ValueError("a two-term resolution of a curve ideal has one more generator than syzygy")

    def ideal_euler_poly(self) -> UniPoly:
        """``chi(I(m))`` by additivity along the resolution."""
        out = UniPoly()
        for n in self.inner_weights:
            out = out + twisted_euler_cubic(-n)
        for n in self.outer_weights:
            out = out - twisted_euler_cubic(-n)
        return out

    def structure_euler_poly(self) -> UniPoly:
        """``chi(O_C(m)) = chi(O(m)) - chi(I(m))``."""
        return twisted_euler_cubic(0) - self.ideal_euler_poly()

    @staticmethod
    def _sum(ws: Sequence[int]) -> str:
        counts = Counter(ws)
        terms = []
        for w in sorted(counts):
            base = f"O(-{w})" if w else "O"
            terms.append(base if counts[w] == 1 else f"{base}^{counts[w]}")
        return " + ".join(terms)

    def format(self) -> str:
        return f"0 -> {self._sum(self.outer_weights)} -> {self._sum(self.inner_weights)} -> I -> 0"

    def to_json(self):
        return {"inner": list(self.inner_weights), "outer": list(self.outer_weights)}


def resolution(nu: Partition) -> FreeResolution:
    inner, outer = inner_outer_boxes(nu)
    return FreeResolution(tuple(inner), tuple(outer))


# ---------------------------------------------------------------------------
# Hilbert polynomials and numerical invariants
# ---------------------------------------------------------------------------

def hilbert_poly_closed(nu: Partition) -> UniPoly:
    """``chi(O_C(m)) = c m + 3c - sum_i nu_i (nu_i + 2i + 1) / 2`` with 1-based ``i``."""
    c = nu.charge
    s = sum(Fraction(p * (p + 2 * i + 1), 2) for i, p in enumerate(nu.parts, start=1))
    return UniPoly([3 * c - s, c])


def hilbert_fn_oracle(nu: Partition, m: int) -> int:
    """Number of degree-``m`` monomials ``z0^p z1^q z2^a z3^b`` with ``(a, b)`` a box."""
    if m < 0:
        raise ValueError("the monomial count is defined for m >= 0")
    count = 0
    for a, b in nu.boxes():
        rest = m - a - b
        for p in range(rest + 1):
            count += 1  # q = rest - p is determined
    return count


def hilbert_scheme_dim(nu: Partition) -> int:
    """Four binomial sums over inner weights ``n1`` and outer weights ``n2``, plus one."""
    n1, n2 = inner_outer_boxes(nu)

    def s(xs: Sequence[int], ys: Sequence[int]) -> int:
        # sum over pairs with y >= x of binom(y - x + 3, 3)
        return sum(comb(y - x + 3, 3) for x in xs for y in ys if y >= x)

    return s(n1, n2) + s(n2, n1) - s(n2, n2) - s(n1, n1) + 1


def quotient_length(nu: Partition) -> int:
    """``l_Z = sum nu_i^2 / 2 + sum i nu_i - c / 2``."""
    c = nu.charge
    val = (Fraction(sum(p * p for p in nu.parts), 2)
           + sum(i * p for i, p in enumerate(nu.parts, start=1)) - Fraction(c, 2))
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"quotient length of {nu} came out as {val}")
    return int(val)


def instanton_quotient_poly(c: int) -> UniPoly:
    """``chi(Q(m)) = c m + 2c`` for a rank-0 instanton sheaf of charge ``c``."""
    return UniPoly([2 * c, c])


def infinitesimal_filtration(nu: Partition) -> list[Partition]:
    """Diagrams cut out by the staircases ``{a + b <= i}``, ending at ``nu``."""
    boxes = nu.boxes()
    top = max(a + b for a, b in boxes)
    return [partition_from_boxes([x for x in boxes if sum(x) <= i]) for i in range(top + 1)]


# ---------------------------------------------------------------------------
# brute-force tangent space oracle
# ---------------------------------------------------------------------------

def _quotient_basis(nu: Partition, d: int) -> list[tuple[int, int, int, int]]:
    """Monomials of degree ``d`` in ``S/I``: ``(p, q, a, b)`` with ``(a, b)`` a box."""
    out = []
    for a, b in nu.boxes():
        rest = d - a - b
        for p in range(rest + 1):
            out.append((p, rest - p, a, b))
    return out


def hom_degree0_oracle(nu: Partition) -> int:
    """``dim Hom_S(I, S/I)_0`` by linear algebra on monomial coordinates.

    A degree-0 map is fixed by images ``f_g in (S/I)_{deg g}`` of the minimal
    generators; the pairwise syzygies ``(L/g) g - (L/h) h`` with ``L = lcm(g, h)``
    impose ``(L/g) f_g = (L/h) f_h`` in ``(S/I)_{deg L}``.
    """
    gens = partition_to_ideal(nu).generators
    inside = set(nu.boxes())
    bases = [_quotient_basis(nu, a + b) for a, b in gens]
    offsets = list(itertools.accumulate([0] + [len(B) for B in bases]))
    nvars = offsets[-1]
    rows: list[list[int]] = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        (ai, bi), (aj, bj) = gens[i], gens[j]
        L = (max(ai, aj), max(bi, bj))
        target: dict[tuple[int, int, int, int], int] = {}
        eqs: list[dict[int, int]] = []

        def push(k: int, shift: Box, sign: int):
            for col, (p, q, a, b) in enumerate(bases[k]):
                img = (a + shift[0], b + shift[1])
                if img not in inside:
                    continue
                key = (p, q) + img
                if key not in target:
                    target[key] = len(eqs)
                    eqs.append({})
                row = eqs[target[key]]
                row[offsets[k] + col] = row.get(offsets[k] + col, 0) + sign

        push(i, (L[0] - ai, L[1] - bi), 1)
        push(j, (L[0] - aj, L[1] - bj), -1)
        for eq in eqs:
            row = [0] * nvars
            for col, v in eq.items():
                row[col] = v
            rows.append(row)
    if not rows:
        return nvars
    return nvars - mat_rank(RatMatrix(len(rows), nvars, rows))


__all__ = [
    "Partition", "partitions_of", "partition_from_boxes", "MonomialIdeal",
    "partition_to_ideal", "ideal_to_partition", "inner_outer_boxes", "outer_corners",
    "FreeResolution", "resolution", "hilbert_poly_closed", "hilbert_fn_oracle",
    "hilbert_scheme_dim", "quotient_length", "instanton_quotient_poly",
    "infinitesimal_filtration", "hom_degree0_oracle",
]
