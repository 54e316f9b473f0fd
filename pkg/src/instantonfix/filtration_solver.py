"""
Canonical-filtration bookkeeping for rank-0 instanton sheaves on monomial multiple lines.

A sheaf ``Q`` on a multiple structure of the line ``l0`` is recorded through
its filtration ``Q = Q_1 ⊃ Q_2 ⊃ ... ⊃ Q_n ⊃ 0``; each quotient
``G_k = Q_k / Q_{k+1}`` lives on ``l0 ≅ P1`` and is stored as a
:class:`LineSheafClass` ``O(d) ⊕ T`` with ``length(T) = t``.  Levels are kept
outermost first (``G_1 = Q|l0``) and innermost last.

Notation used below, for a list of ``n`` levels:

``S_k``
    the subsheaf ``Q_k``, i.e. levels ``k..n``;
``O_k``
    the quotient ``Q / Q_{k+1}``, i.e. levels ``1..k``.

The solver enumerates level data inside the box ``|d| <= 2c + 2``,
``0 <= t <= 2c`` and filters it through named constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .exact_math import UniPoly
from .young_monomial import Partition, hilbert_poly_closed, quotient_length


@dataclass(frozen=True, order=True)
class LineSheafClass:
    """``O_{l0}(degree) ⊕ T`` with ``T`` torsion of length ``torsion``."""

    degree: int
    torsion: int = 0

    def __post_init__(self):
        if self.torsion < 0:
            raise ValueError("torsion length must be nonnegative")

    def chi(self, twist: int = 0) -> int:
        return self.degree + twist + 1 + self.torsion

    def chi_poly(self) -> UniPoly:
        return UniPoly([self.degree + 1 + self.torsion, 1])

    def to_json(self):
        return {"d": self.degree, "t": self.torsion}

    def __str__(self) -> str:
        base = f"O({self.degree})"
        return base if not self.torsion else f"{base}+T{self.torsion}"


Levels = tuple[LineSheafClass, ...]


def line_cohomology(s: LineSheafClass, twist: int) -> tuple[int, int]:
    """``(h0, h1)`` of ``s(twist)`` on ``P1``."""
    e = s.degree + twist + 1
    return max(0, e) + s.torsion, max(0, -e)


def _chi(levels: Sequence[LineSheafClass], twist: int) -> int:
    return sum(s.chi(twist) for s in levels)


def as_levels(pairs: Sequence) -> Levels:
    return tuple(p if isinstance(p, LineSheafClass) else LineSheafClass(*p) for p in pairs)


# ---------------------------------------------------------------------------
# generalized rank / degree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedClass:
    R: int
    Deg: int

    def __add__(self, other: "GeneralizedClass") -> "GeneralizedClass":
        return GeneralizedClass(self.R + other.R, self.Deg + other.Deg)


def generalized_rank_degree(levels: Sequence[LineSheafClass]) -> GeneralizedClass:
    """Each level contributes rank one; torsion contributes its length to the degree."""
    return GeneralizedClass(len(levels), sum(s.degree + s.torsion for s in levels))


def riemann_roch_check(gc: GeneralizedClass, chi, genus) -> bool:
    return Fraction(chi) == gc.Deg + gc.R * (1 - Fraction(genus))


def derived_genus(gc: GeneralizedClass, chi) -> Fraction:
    if gc.R == 0:
        raise ValueError("genus is undefined for generalized rank 0")
    return 1 - (Fraction(chi) - gc.Deg) / gc.R


def gr_structure_sheaf_primitive(c: int) -> Levels:
    if c < 1:
        raise ValueError("charge must be positive")
    return tuple(LineSheafClass(-i) for i in range(c))


def gr_structure_sheaf(nu: Partition) -> Levels:
    """One ``O(-w)`` per box of weight ``w``, lowest weight first."""
    return tuple(LineSheafClass(-w) for w in nu.weights())


def mu_semistable(levels: Sequence[LineSheafClass]) -> bool:
    """Slope of every filtration subsheaf ``S_k`` (``k >= 2``) is at most 2."""
    n = len(levels)
    return all(Fraction(_chi(levels[k:], 0), n - k) <= 2 for k in range(1, n))


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Support:
    """The support diagram plus the level structure its filtration is compared to."""

    nu: Partition
    kind: str  # "primitive" | "upper_arrow" | "unsupported"
    structure: Levels

    @property
    def charge(self) -> int:
        return self.nu.charge


def support_of(nu: Partition) -> Support:
    if nu.is_primitive():
        kind = "primitive"
    elif nu.parts == (2, 1):
        kind = "upper_arrow"
    else:
        kind = "unsupported"
    return Support(nu, kind, gr_structure_sheaf(nu))


def _chi_total(L: Levels, sup: Support) -> bool:
    c = sup.charge
    return len(L) == c and _chi(L, 0) == 2 * c


def _h0_inner(L: Levels, sup: Support) -> bool:
    n = len(L)
    if line_cohomology(L[-1], -2)[0] != 0:
        return False
    return all(_chi(L[k:], -2) <= 0 for k in range(1, n - 1))


def _h1_outer(L: Levels, sup: Support) -> bool:
    n = len(L)
    if line_cohomology(L[0], -2)[1] != 0:
        return False
    return all(_chi(L[:k], -2) >= 0 for k in range(2, n))


def _connecting(L: Levels, sup: Support) -> bool:
    """``h1(S_k(-2)) = h0(O_{k-1}(-2))`` for every split.

    A single level has exact cohomology.  Longer pieces use ``-chi`` on the
    subsheaf side (valid once ``h0`` vanishes) and ``chi`` on the quotient
    side (valid once ``h1`` vanishes).
    """
    n = len(L)
    for k in range(1, n):  # split between L[:k] and L[k:]
        inner = L[k:]
        outer = L[:k]
        h1_s = line_cohomology(inner[0], -2)[1] if len(inner) == 1 else -_chi(inner, -2)
        h0_o = line_cohomology(outer[0], -2)[0] if len(outer) == 1 else _chi(outer, -2)
        if h1_s != h0_o:
            return False
    return True


def _quotient_lengths(L: Levels, sup: Support) -> bool:
    S = sup.structure
    if len(L) != len(S):
        return False
    n = len(L)
    subs = all(_chi(L[k:], 0) >= _chi(S[k:], 0) for k in range(1, n))
    quots = all(_chi(L[:k], 0) >= _chi(S[:k], 0) for k in range(1, n))
    return subs and quots


def _zero_quotient_rigidity(L: Levels, sup: Support) -> bool:
    S = sup.structure
    return all(L[k:] == S[k:] for k in range(1, len(L)) if _chi(L[k:], 0) == _chi(S[k:], 0))


def _structure_injection(L: Levels, sup: Support) -> bool:
    return L[-1].degree >= sup.structure[-1].degree


def _innermost_twist(L: Levels, sup: Support) -> bool:
    if len(L) < 2:
        return L[-1].torsion == 0
    return L[-1].torsion == 0 and L[-1].degree == L[-2].degree - 1


def _inner_restriction_vanishing(L: Levels, sup: Support) -> bool:
    return all(line_cohomology(s, -2)[1] == 0 for s in L[:-1])


def _outer_locally_free(L: Levels, sup: Support) -> bool:
    return sup.charge < 3 or L[0].torsion == 0


def _upper_arrow(L: Levels, sup: Support) -> bool:
    return L[1].degree + L[1].torsion == L[0].degree - 1


Check = Callable[[Levels, Support], bool]

INSTANTON_CONSTRAINTS: tuple[tuple[str, Check], ...] = (
    ("chi_total", _chi_total),
    ("h0_inner_vanishing", _h0_inner),
    ("h1_outer_vanishing", _h1_outer),
    ("connecting_equalities", _connecting),
)
STRUCTURE_CONSTRAINTS: tuple[tuple[str, Check], ...] = (
    ("quotient_lengths_nonnegative", _quotient_lengths),
    ("zero_quotient_rigidity", _zero_quotient_rigidity),
    ("structure_sheaf_injection", _structure_injection),
)
SHAPE_CONSTRAINTS: dict[str, tuple[tuple[str, Check], ...]] = {
    "primitive": (
        ("innermost_twist_of_previous", _innermost_twist),
        ("inner_restriction_vanishing", _inner_restriction_vanishing),
        ("outer_restriction_locally_free", _outer_locally_free),
    ),
    "upper_arrow": (
        ("innermost_twist_of_previous", _innermost_twist),
        ("upper_arrow_restriction", _upper_arrow),
    ),
    "unsupported": (),
}


def constraints_for(sup: Support) -> tuple[tuple[str, Check], ...]:
    return INSTANTON_CONSTRAINTS + STRUCTURE_CONSTRAINTS + SHAPE_CONSTRAINTS[sup.kind]


def violations(levels: Sequence, nu: Partition) -> list[str]:
    """Names of every constraint the level data violate for the support ``nu``."""
    L = as_levels(levels)
    sup = support_of(nu)
    if len(L) != sup.charge:
        return ["chi_total"]
    return [name for name, check in constraints_for(sup) if not check(L, sup)]


# ---------------------------------------------------------------------------
# cases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiltrationCase:
    levels: Levels
    support_partition: Partition

    def __init__(self, levels: Sequence, support_partition: Partition):
        object.__setattr__(self, "levels", as_levels(levels))
        object.__setattr__(self, "support_partition", support_partition)

    def chi_poly(self) -> UniPoly:
        out = UniPoly()
        for s in self.levels:
            out = out + s.chi_poly()
        return out

    def generalized(self) -> GeneralizedClass:
        return generalized_rank_degree(self.levels)

    def z_lengths(self) -> list[int]:
        """Per-level excess of ``chi`` over the structure-sheaf level."""
        S = gr_structure_sheaf(self.support_partition)
        return [g.chi(0) - s.chi(0) for g, s in zip(self.levels, S)]

    def to_json(self):
        return {"levels": [s.to_json() for s in self.levels]}

    def __str__(self) -> str:
        return " | ".join(str(s) for s in self.levels)


@dataclass(frozen=True)
class Verdict:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"ok": self.ok, "violations": list(self.violations)}


def instanton_conditions(case: FiltrationCase) -> Verdict:
    """Vanishing of ``h0, h1`` of ``Q(-2)`` and the restriction cascade, read off the levels."""
    sup = support_of(case.support_partition)
    L = case.levels
    if len(L) != sup.charge:
        return Verdict(("chi_total",))
    return Verdict(tuple(name for name, check in INSTANTON_CONSTRAINTS if not check(L, sup)))


@dataclass(frozen=True)
class Rejection:
    levels: Levels
    violations: tuple[str, ...]

    def to_json(self):
        return {"levels": [s.to_json() for s in self.levels], "violations": list(self.violations)}


@dataclass(frozen=True)
class SolveResult:
    partition: Partition
    status: str  # "classified" | "candidate" | "not classified"
    cases: tuple[FiltrationCase, ...] = ()
    rejected: tuple[Rejection, ...] = ()
    pruned: tuple[tuple[str, int], ...] = ()
    bounds: tuple[int, int] = (0, 0)
    touches_bound: bool = False

    def to_json(self, with_log: bool = False):
        out = {
            "partition": self.partition.to_json(),
            "status": self.status,
            "cases": [case.to_json() for case in self.cases],
        }
        if with_log:
            out["rejected"] = [r.to_json() for r in self.rejected]
            out["pruned"] = {name: count for name, count in self.pruned}
            out["bounds"] = {"degree": self.bounds[0], "torsion": self.bounds[1]}
            out["touches_bound"] = self.touches_bound
        return out


NOT_CLASSIFIED = "not classified"


def _prefix_violation(L: Levels, k: int, sup: Support, chi0: Optional[int] = None,
                      struct_chi0: Optional[int] = None) -> Optional[str]:
    """First violated constraint visible from the inner levels ``L = levels[k:]`` (0-based ``k``).

    Only checks implied by the full constraint list are used, so pruning
    never drops an admissible case.  ``chi0`` and ``struct_chi0`` may carry
    precomputed ``chi(L)`` and ``chi(S[k:])``.
    """
    n = sup.charge
    S = sup.structure
    if chi0 is None:
        chi0 = _chi(L, 0)
    if struct_chi0 is None:
        struct_chi0 = _chi(S[k:], 0)
    if k == n - 1:
        if line_cohomology(L[0], -2)[0] != 0:
            return "h0_inner_vanishing"
        if L[0].degree < S[-1].degree:
            return "structure_sheaf_injection"
    if 1 <= k < n - 1 and chi0 - 2 * len(L) > 0:
        return "h0_inner_vanishing"
    if k >= 1:
        if chi0 < struct_chi0:
            return "quotient_lengths_nonnegative"
        if chi0 == struct_chi0 and L != S[k:]:
            return "zero_quotient_rigidity"
    if k == n - 2 and sup.kind in ("primitive", "upper_arrow"):
        if L[1].degree != L[0].degree - 1:
            return "innermost_twist_of_previous"
    if sup.kind == "primitive" and k < n - 1 and line_cohomology(L[0], -2)[1] != 0:
        return "inner_restriction_vanishing"
    return None


@lru_cache(maxsize=None)
def solve(nu: Partition) -> SolveResult:
    """Admissible filtration data for a rank-0 instanton sheaf supported on ``nu``.

    Depth-first from the innermost level outwards; the outermost level's
    torsion is fixed by the total Euler characteristic.  Every pruned branch
    and every rejected full candidate is charged to a named constraint.
    """
    sup = support_of(nu)
    c = sup.charge
    dmax, tmax = 2 * c + 2, 2 * c
    if sup.kind == "unsupported" or (sup.kind == "upper_arrow" and c > 3):
        return SolveResult(nu, NOT_CLASSIFIED, bounds=(dmax, tmax))
    pruned: dict[str, int] = {}
    cases: list[FiltrationCase] = []
    rejected: list[Rejection] = []

    def charge(name: str, count: int = 1):
        pruned[name] = pruned.get(name, 0) + count

    S = sup.structure
    struct_chi = [_chi(S[k:], 0) for k in range(c + 1)]

    def rec(suffix: Levels, suffix_chi0: int = 0):
        k = c - len(suffix) - 1  # index of the level being chosen
        if k == 0:
            used = sum(s.degree + s.torsion for s in suffix)
            for d in range(-dmax, dmax + 1):
                t = c - used - d
                if not 0 <= t <= tmax:
                    charge("chi_total")
                    continue
                L = (LineSheafClass(d, t),) + suffix
                bad = [name for name, check in constraints_for(sup) if not check(L, sup)]
                if bad:
                    rejected.append(Rejection(L, tuple(bad)))
                else:
                    cases.append(FiltrationCase(L, nu))
            return
        for d in range(-dmax, dmax + 1):
            # chi(S_k(-2)) is increasing in t, so the h0 bound caps t directly
            t_cap = tmax
            if 1 <= k < c - 1:
                t_cap = min(tmax, -(suffix_chi0 - 2 * len(suffix)) - (d - 1))
            elif k == c - 1:
                t_cap = min(tmax, 0)
            if t_cap < tmax:
                charge("h0_inner_vanishing", tmax - max(t_cap, -1))
            for t in range(0, t_cap + 1):
                L = (LineSheafClass(d, t),) + suffix
                chi0 = suffix_chi0 + d + t + 1
                bad = _prefix_violation(L, k, sup, chi0, struct_chi[k])
                if bad:
                    charge(bad)
                else:
                    rec(L, chi0)

    rec(())
    touches = any(abs(s.degree) == dmax or s.torsion == tmax for case in cases for s in case.levels)
    status = "classified" if c <= 3 else "candidate"
    cases.sort(key=lambda cs: [(-s.degree, -s.torsion) for s in cs.levels])
    return SolveResult(nu, status, tuple(cases), tuple(rejected),
                       tuple(sorted(pruned.items())), (dmax, tmax), touches)


def brute_force_cases(nu: Partition) -> list[Levels]:
    """Grid search with no pruning, filtering through :func:`violations` only.

    Intended as an independent check of :func:`solve` for small charge.  The
    outermost torsion is fixed by the Euler characteristic and the innermost
    level is taken torsion-free (a subsheaf of a pure sheaf).
    """
    sup = support_of(nu)
    c = sup.charge
    dmax, tmax = 2 * c + 2, 2 * c
    grid = [LineSheafClass(d, t) for d in range(-dmax, dmax + 1) for t in range(tmax + 1)]
    inner_grid = [LineSheafClass(d, 0) for d in range(-dmax, dmax + 1)]
    out = []

    def rec(prefix_from_inside: Levels):
        if len(prefix_from_inside) == c - 1:
            used = sum(s.degree + s.torsion for s in prefix_from_inside)
            for d in range(-dmax, dmax + 1):
                t = c - used - d
                if 0 <= t <= tmax:
                    L = (LineSheafClass(d, t),) + prefix_from_inside
                    if not violations(L, nu):
                        out.append(L)
            return
        pool = inner_grid if not prefix_from_inside else grid
        for s in pool:
            rec((s,) + prefix_from_inside)

    rec(())
    return sorted(out, key=lambda L: [(-s.degree, -s.torsion) for s in L])


# ---------------------------------------------------------------------------
# the (2,1) table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    z_tilde: int
    chi_Q2_minus2: int
    z_bar: int
    chi_restriction_minus2: int
    feasible: bool
    cases: tuple[FiltrationCase, ...] = ()
    violations: tuple[str, ...] = ()
    candidates: tuple[Rejection, ...] = field(default=(), compare=False)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.z_tilde, self.chi_Q2_minus2, self.z_bar, self.chi_restriction_minus2)

    def to_json(self):
        return {
            "z_tilde": self.z_tilde,
            "chi_Q2(-2)": self.chi_Q2_minus2,
            "z_bar": self.z_bar,
            "chi_Q|l0(-2)": self.chi_restriction_minus2,
            "feasible": self.feasible,
            "cases": [cs.to_json() for cs in self.cases],
            "violations": list(self.violations),
        }


TABLE_PARTITION = Partition((2, 1))


def z_tilde(levels: Sequence[LineSheafClass], nu: Partition = TABLE_PARTITION) -> int:
    """Length of the cokernel of the structure sheaf inside ``Q_2``."""
    S = gr_structure_sheaf(nu)
    return _chi(levels[1:], 0) - _chi(S[1:], 0)


def case_table_c3_nonprimitive() -> list[TableRow]:
    """Rows ``z~ = 0..l_Z`` for the non-primitive charge-3 support.

    Each row carries ``chi(Q_2(-2))``, ``z- = l_Z - z~`` and ``chi(Q|l0(-2))``.
    A row is feasible when the solver returns a case with that ``z~``.  For
    an infeasible row the candidates are the level data that respect the
    support's bookkeeping (total Euler characteristic, quotient lengths,
    rigidity, structure injection, torsion-free innermost level and the
    upper-arrow restriction); the union of their remaining violations is
    reported as the reason.
    """
    nu = TABLE_PARTITION
    sup = support_of(nu)
    S = sup.structure
    c = nu.charge
    lz = quotient_length(nu)
    solved = solve(nu)
    dmax, tmax = solved.bounds
    bookkeeping = {"chi_total", "quotient_lengths_nonnegative", "zero_quotient_rigidity",
                   "structure_sheaf_injection", "upper_arrow_restriction"}
    by_row: dict[int, list[Rejection]] = {}
    for d3 in range(-dmax, dmax + 1):
        for d2 in range(-dmax, dmax + 1):
            for t2 in range(tmax + 1):
                d1 = d2 + t2 + 1
                t1 = c - d1 - d2 - t2 - d3
                if not (abs(d1) <= dmax and 0 <= t1 <= tmax):
                    continue
                L = as_levels([(d1, t1), (d2, t2), (d3, 0)])
                bad = violations(L, nu)
                if bookkeeping & set(bad):
                    continue
                by_row.setdefault(z_tilde(L), []).append(Rejection(L, tuple(bad)))
    rows = []
    for zt in range(lz + 1):
        zb = lz - zt
        chi_q2 = _chi(S[1:], -2) + zt
        chi_res = S[0].chi(-2) + zb
        hits = tuple(cs for cs in solved.cases if z_tilde(cs.levels) == zt)
        cands = tuple(by_row.get(zt, ()))
        reasons: tuple[str, ...] = ()
        if not hits:
            seen: list[str] = []
            for r in cands:
                for v in r.violations:
                    if v not in seen:
                        seen.append(v)
            reasons = tuple(seen) if cands else ("no level data with this length",)
        rows.append(TableRow(zt, chi_q2, zb, chi_res, bool(hits), hits, reasons, cands))
    return rows


__all__ = [
    "LineSheafClass", "line_cohomology", "as_levels", "GeneralizedClass",
    "generalized_rank_degree", "riemann_roch_check", "derived_genus",
    "gr_structure_sheaf_primitive", "gr_structure_sheaf", "mu_semistable",
    "Support", "support_of", "constraints_for", "violations", "FiltrationCase", "Verdict",
    "instanton_conditions", "Rejection", "SolveResult", "solve", "brute_force_cases",
    "TableRow", "case_table_c3_nonprimitive", "z_tilde", "NOT_CLASSIFIED",
    "INSTANTON_CONSTRAINTS", "STRUCTURE_CONSTRAINTS", "SHAPE_CONSTRAINTS",
]
