"""
Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .adhm_core import AdhmDatum, SchemaError
from .exact_math import rational_to_json
from .filtration_solver import case_table_c3_nonprimitive, solve
from .moduli_invariants import component_lower_bound, pairing_demo, partition_count, poincare_claim
from .reports import MAX_CHARGE, SCHEMA_VERSION, UsageError, adhm_check, check_charge, classify, dumps, poly_json
from .young_monomial import (
    Partition, hilbert_fn_oracle, hilbert_poly_closed, partition_to_ideal, partitions_of, resolution,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _partition_arg(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _m_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("needs lo <= hi")
    return lo, hi


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _doc(**fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, **fields}


# ---------------------------------------------------------------------------
# commands; each returns (exit code, json document, text)
# ---------------------------------------------------------------------------

def cmd_classify(args):
    charge = _require(args.charge, "--charge")
    check_charge(charge)
    report = classify(charge, jobs=args.jobs)
    code = EXIT_OK if report.checks_failed == 0 else EXIT_FAIL
    return code, report.to_json(), report.to_text()


def cmd_hilbert(args):
    nu = _require(args.partition, "--partition")
    lo, hi = args.m_range or (0, 10)
    P = hilbert_poly_closed(nu)
    top = max(nu.weights())
    values = []
    lines = [f"chi(O_C(m)) = {P.format('m')} for {nu}"]
    ok = True
    for m in range(lo, hi + 1):
        row = {"m": m, "closed": rational_to_json(P(m))}
        line = f"m={m}: {P(m)}"
        if m >= 0:
            count = hilbert_fn_oracle(nu, m)
            row["monomial_count"] = count
            line += f" (monomial count {count})"
            if m >= top and count != P(m):
                ok = False
        values.append(row)
        lines.append(line)
    doc = _doc(partition=nu.to_json(), hilbert_poly=poly_json(P), regularity_start=top, values=values)
    return (EXIT_OK if ok else EXIT_FAIL), doc, "\n".join(lines) + "\n"


def cmd_resolution(args):
    nu = _require(args.partition, "--partition")
    res = resolution(nu)
    ideal = partition_to_ideal(nu)
    doc = _doc(partition=nu.to_json(), ideal=ideal.to_json(), resolution=res.to_json(),
               sequence=res.format())
    return EXIT_OK, doc, f"I = {ideal}\n{res.format()}\n"


def cmd_partitions(args):
    charge = _require(args.charge, "--charge")
    check_charge(charge)
    parts = list(partitions_of(charge))
    doc = _doc(charge=charge, count=partition_count(charge), lower_bound=component_lower_bound(charge))
    lines = [f"p({charge}) = {doc['count']}"]
    if args.table:
        doc["partitions"] = [p.to_json() for p in parts]
        doc["ideals"] = [partition_to_ideal(p).to_json() for p in parts]
        lines += [f"{p}\t{partition_to_ideal(p)}" for p in parts]
    return EXIT_OK, doc, "\n".join(lines) + "\n"


def cmd_cases(args):
    if args.table:
        rows = case_table_c3_nonprimitive()
        doc = _doc(partition=[2, 1], table=[r.to_json() for r in rows])
        lines = ["z~\tchi(Q2(-2))\tz-\tchi(Q|l0(-2))\tfeasible\treasons"]
        for r in rows:
            z, a, zb, b = r.as_tuple()
            lines.append(f"{z}\t{a}\t{zb}\t{b}\t{'yes' if r.feasible else 'no'}\t{', '.join(r.violations)}")
        return EXIT_OK, doc, "\n".join(lines) + "\n"
    nu = _require(args.partition, "--partition")
    result = solve(nu)
    doc = _doc(**result.to_json(with_log=True))
    lines = [f"{nu}: {result.status}, {len(result.cases)} case(s)"]
    lines += ["  " + str(case) for case in result.cases]
    if result.rejected:
        lines.append("rejected full candidates:")
        lines += [f"  {' | '.join(map(str, r.levels))}: {', '.join(r.violations)}" for r in result.rejected]
    if result.pruned:
        lines.append("pruned branches: " + ", ".join(f"{n}={k}" for n, k in result.pruned))
    return EXIT_OK, doc, "\n".join(lines) + "\n"


def cmd_adhm_check(args):
    path = _require(args.input, "--input")
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        X = AdhmDatum.from_json(raw)
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None
    doc = adhm_check(X, fixed=args.fixed)
    text = [f"equations: {'ok' if doc['equations']['ok'] else 'violated ' + str(doc['equations']['violations'])}",
            f"complex condition: {doc['complex_condition']}",
            f"stable: {doc['stability']['stable']} (closure dim {doc['stability']['closure_dim']})",
            f"weak stability: {doc['weak_stability']['status']}"]
    if args.fixed:
        fx = doc["fixed"]
        text.append(f"fixed candidate: {fx['candidate']['ok']} {fx['candidate']['failures'] or ''}".rstrip())
        text.append(f"witnesses certified: {fx['witnesses']['certified']}")
    text.append(f"overall: {'ok' if doc['ok'] else 'not ok'}")
    return (EXIT_OK if doc["ok"] else EXIT_FAIL), doc, "\n".join(text) + "\n"


def cmd_poincare(args):
    charge = args.charge if args.charge is not None else 1
    check_charge(charge)
    claim = poincare_claim(charge)
    text = f"P(t) = {claim['formula']}\nchi = {claim['euler_characteristic']}\n"
    return EXIT_OK, _doc(**claim), text


def cmd_pairing(args):
    if not args.demo:
        raise UsageError("pairing currently supports only --demo")
    demo = pairing_demo()
    text = "\n".join(f"{k} = {v}" for k, v in demo.items()) + "\n"
    return EXIT_OK, _doc(**demo), text


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all()
    doc = _doc(criteria=[{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                         for r in results],
               passed=sum(r.passed for r in results), failed=sum(not r.passed for r in results))
    text = "\n".join(r.line() for r in results) + f"\n{doc['passed']} passed, {doc['failed']} failed\n"
    return (EXIT_OK if doc["failed"] == 0 else EXIT_FAIL), doc, text


COMMANDS = {
    "classify": (cmd_classify, "classification report for one charge"),
    "hilbert": (cmd_hilbert, "Hilbert polynomial of a multiple line, with monomial counts"),
    "resolution": (cmd_resolution, "ideal and free resolution of a diagram"),
    "partitions": (cmd_partitions, "partition count and diagrams of a charge"),
    "cases": (cmd_cases, "filtration cases of a diagram, or the charge-3 table"),
    "adhm-check": (cmd_adhm_check, "verdicts for an ADHM datum in JSON"),
    "poincare": (cmd_poincare, "Poincare polynomial and Euler characteristic"),
    "pairing": (cmd_pairing, "Euler pairings of the charge-1 pair"),
    "selftest": (cmd_selftest, "run every acceptance criterion"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="instantonfix", description="Torus-fixed rank-0 instanton sheaves on multiple lines.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--charge", type=int)
        p.add_argument("--partition", type=_partition_arg)
        p.add_argument("--input")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out")
        p.add_argument("--m-range", type=_m_range)
        p.add_argument("--fixed", action="store_true")
        p.add_argument("--table", action="store_true")
        p.add_argument("--demo", action="store_true")
        p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        code, doc, text = COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"instantonfix: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    output = dumps(doc) if args.format == "json" else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return code


__all__ = ["main", "build_parser", "MAX_CHARGE"]
