"""
Report assembly: per-charge classification documents and ADHM verdicts.

JSON is the stable output format; every document carries
``schema_version``.  Text rendering is for people and may change.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .adhm_core import (
    AdhmDatum, build_monad, check_equations, complex_condition, stability_closure, weak_stability,
)
from .exact_math import UniPoly, rational_to_json
from .filtration_solver import derived_genus, generalized_rank_degree, solve
from .moduli_invariants import component_lower_bound, partition_count, refined_component_count_c3
from .torus_fixed import check_sandwich, is_fixed_candidate, sample_fixedness
from .young_monomial import (
    Partition, hilbert_fn_oracle, hilbert_poly_closed, hilbert_scheme_dim, infinitesimal_filtration,
    instanton_quotient_poly, partition_to_ideal, partitions_of, quotient_length, resolution,
)

SCHEMA_VERSION = "1"
MAX_CHARGE = 30


class UsageError(ValueError):
    """Bad command-line input; maps to exit code 2."""


def poly_json(p: UniPoly) -> list[str]:
    return [rational_to_json(a) for a in p.coeffs]


def dumps(doc) -> str:
    """Canonical JSON text used for every emitted document."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionEntry:
    partition: tuple[int, ...]
    ideal: tuple[tuple[int, int], ...]
    inner_weights: tuple[int, ...]
    outer_weights: tuple[int, ...]
    hilbert_poly: tuple[str, ...]
    hilbert_scheme_dim: int
    quotient_length: int
    filtration: tuple[tuple[int, ...], ...]
    status: str
    cases: tuple[tuple[tuple[int, int], ...], ...]
    checks_passed: int
    checks_failed: tuple[str, ...]

    def to_json(self):
        return {
            "partition": list(self.partition),
            "ideal": [list(g) for g in self.ideal],
            "resolution": {"inner": list(self.inner_weights), "outer": list(self.outer_weights)},
            "hilbert_poly": list(self.hilbert_poly),
            "hilbert_scheme_dim": self.hilbert_scheme_dim,
            "quotient_length": self.quotient_length,
            "filtration": [list(p) for p in self.filtration],
            "status": self.status,
            "cases": [[{"d": d, "t": t} for d, t in case] for case in self.cases],
            "checks": {"passed": self.checks_passed, "failed": list(self.checks_failed)},
        }

    @classmethod
    def from_json(cls, obj) -> "PartitionEntry":
        return cls(
            tuple(obj["partition"]),
            tuple(tuple(g) for g in obj["ideal"]),
            tuple(obj["resolution"]["inner"]),
            tuple(obj["resolution"]["outer"]),
            tuple(obj["hilbert_poly"]),
            obj["hilbert_scheme_dim"],
            obj["quotient_length"],
            tuple(tuple(p) for p in obj["filtration"]),
            obj["status"],
            tuple(tuple((lv["d"], lv["t"]) for lv in case) for case in obj["cases"]),
            obj["checks"]["passed"],
            tuple(obj["checks"]["failed"]),
        )


def entry_checks(nu: Partition, cases) -> dict[str, bool]:
    """Cheap per-diagram cross-checks that back the numbers in an entry."""
    closed = hilbert_poly_closed(nu)
    top = max(nu.weights())
    diff = instanton_quotient_poly(nu.charge) - closed
    checks = {
        "hilbert_oracle": all(hilbert_fn_oracle(nu, m) == closed(m) for m in range(top, top + 4)),
        "resolution_additivity": resolution(nu).structure_euler_poly() == closed,
        "quotient_bookkeeping": diff.degree <= 0 and diff(0) == quotient_length(nu),
    }
    checks["riemann_roch"] = all(
        derived_genus(generalized_rank_degree(case.levels), case.chi_poly()(0)) == 0 for case in cases)
    return checks


def partition_entry(nu: Partition) -> PartitionEntry:
    res = resolution(nu)
    result = solve(nu)
    checks = entry_checks(nu, result.cases)
    return PartitionEntry(
        partition=nu.parts,
        ideal=partition_to_ideal(nu).generators,
        inner_weights=res.inner_weights,
        outer_weights=res.outer_weights,
        hilbert_poly=tuple(poly_json(hilbert_poly_closed(nu))),
        hilbert_scheme_dim=hilbert_scheme_dim(nu),
        quotient_length=quotient_length(nu),
        filtration=tuple(p.parts for p in infinitesimal_filtration(nu)),
        status=result.status,
        cases=tuple(tuple((s.degree, s.torsion) for s in case.levels) for case in result.cases),
        checks_passed=sum(checks.values()),
        checks_failed=tuple(name for name, ok in checks.items() if not ok),
    )


@dataclass(frozen=True)
class ClassificationReport:
    charge: int
    entries: tuple[PartitionEntry, ...]
    component_lower_bound: int
    refined_count: Optional[int]

    @property
    def checks_passed(self) -> int:
        return sum(e.checks_passed for e in self.entries)

    @property
    def checks_failed(self) -> int:
        return sum(len(e.checks_failed) for e in self.entries)

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "charge": self.charge,
            "partition_count": len(self.entries),
            "component_lower_bound": self.component_lower_bound,
            "refined_component_count": self.refined_count,
            "invariants": {"passed": self.checks_passed, "failed": self.checks_failed},
            "entries": [e.to_json() for e in self.entries],
        }

    @classmethod
    def from_json(cls, obj) -> "ClassificationReport":
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {obj.get('schema_version')!r}")
        return cls(obj["charge"], tuple(PartitionEntry.from_json(e) for e in obj["entries"]),
                   obj["component_lower_bound"], obj["refined_component_count"])

    def to_text(self) -> str:
        lines = [f"charge {self.charge}: {len(self.entries)} diagrams, "
                 f"at least {self.component_lower_bound} components"]
        if self.refined_count is not None:
            lines.append(f"refined filtration-case count: {self.refined_count}")
        for e in self.entries:
            label = ",".join(map(str, e.partition))
            lines.append(f"[{label}] dim Hilb = {e.hilbert_scheme_dim}, l_Z = {e.quotient_length}, "
                         f"inner {list(e.inner_weights)}, outer {list(e.outer_weights)}, {e.status}")
            for case in e.cases:
                lines.append("    " + " | ".join(f"O({d})" + (f"+T{t}" if t else "") for d, t in case))
        lines.append(f"invariant checks: {self.checks_passed} passed, {self.checks_failed} failed")
        return "\n".join(lines) + "\n"


def check_charge(charge: int) -> None:
    if not isinstance(charge, int) or not 1 <= charge <= MAX_CHARGE:
        raise UsageError(f"charge must be an integer in 1..{MAX_CHARGE}, got {charge!r}")


def classify(charge: int, jobs: int = 1) -> ClassificationReport:
    """Classification report for one charge.

    Entries are computed independently (optionally on ``jobs`` threads) and
    collected in partition order, so the result does not depend on ``jobs``.
    """
    check_charge(charge)
    parts = list(partitions_of(charge))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = tuple(pool.map(partition_entry, parts))
    else:
        entries = tuple(partition_entry(nu) for nu in parts)
    if len(entries) != partition_count(charge):
        raise ArithmeticError("entry count differs from the partition count")
    refined = refined_component_count_c3() if charge == 3 else None
    return ClassificationReport(charge, entries, component_lower_bound(charge), refined)


# ---------------------------------------------------------------------------
# ADHM verdicts
# ---------------------------------------------------------------------------

def adhm_check(X: AdhmDatum, fixed: bool = False) -> dict:
    """Verdict document for one ADHM datum; ``ok`` is the conjunction of the checks run."""
    eq = check_equations(X)
    closure = stability_closure(X)
    weak = weak_stability(X)
    cx = complex_condition(build_monad(X))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "c": X.c,
        "r": X.r,
        "equations": {"ok": eq.ok, "violations": list(eq.violations)},
        "complex_condition": cx,
        "stability": {"stable": closure.stable, "closure_dim": closure.closure_dim},
        "weak_stability": weak.to_json(),
    }
    ok = eq.ok and cx
    if fixed:
        fv = is_fixed_candidate(X)
        report = sample_fixedness(X)
        doc["fixed"] = {
            "candidate": {"ok": fv.ok, "failures": list(fv.failures)},
            "sandwich": check_sandwich(X, 2 * X.c),
            "witnesses": report.to_json(),
        }
        ok = ok and fv.ok and report.certified
    doc["ok"] = ok
    return doc
