"""Command-line front end.

Exit codes: 0 success / no violations, 1 rainbow solution found, 2 oracle
mismatch, 64 unparsable input, 65 unsupported domain, 66 over budget.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

from .classify import (
    DelegateToOracle,
    NON_RAINBOW,
    RAINBOW,
    classify,
    construct_equal_coeffs,
    construct_singleton,
    dilation_group,
    forced_singleton,
    match_structure,
)
from .coloring import Color, ColoringParseError, parse_coloring
from .equation import Equation, EquationParseError, find_rainbow, parse_equation
from .oracle import (
    UNFILTERED_LIMIT,
    BudgetError,
    EnumerationFilter,
    cross_validate,
    min_class_scan,
    oracle_verdict,
    rainbow_free_batches,
)
from .sumset import format_violation, iter_lemma43, scan_cd, scan_cd_sampled, scan_hr, scan_vosper
from .zp import DomainError, is_prime, parse_int_list

EXIT_OK = 0
EXIT_RAINBOW = 1
EXIT_MISMATCH = 2
EXIT_PARSE = 64
EXIT_DOMAIN = 65
EXIT_BUDGET = 66

CSV_COLUMNS = ["p", "a1", "a2", "a3", "b", "verdict", "reason", "subgroup_order", "s", "witness"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which is reserved for mismatches
        raise UsageError(message)


def _emit(obj, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def _eq(args) -> Equation:
    if not args.eq:
        raise UsageError("--eq is required")
    return parse_equation(args.eq)


def _split(text: Optional[str]) -> Optional[List[int]]:
    return None if text is None else parse_int_list(text)


def cmd_classify(args, out: TextIO) -> int:
    eq = _eq(args)
    if args.oracle:
        is_rainbow, witness = oracle_verdict(eq, force=args.force)
        H = dilation_group(eq)
        result = {
            "equation": eq.to_text(),
            "verdict": RAINBOW if is_rainbow else NON_RAINBOW,
            "reason": "oracle",
            "subgroup": {"order": H.order, "elements": list(H.elements)},
            "s": None,
            "s_free": False,
            "witness": witness.to_text() if witness else None,
        }
        if eq.p >= 5:
            closed = classify(eq, args.s, _split(args.split))
            result["classify_verdict"] = closed.verdict
            result["reason"] = closed.reason
    else:
        result = classify(eq, args.s, _split(args.split)).to_dict()
    if args.json:
        _emit(result, out)
    else:
        for key in ("equation", "verdict", "reason"):
            out.write(f"{key}: {result[key]}\n")
        out.write(f"subgroup: order {result['subgroup']['order']} {result['subgroup']['elements']}\n")
        if result["s"] is not None:
            out.write(f"s: {result['s']}{' (free choice)' if result['s_free'] else ''}\n")
        if result["witness"]:
            out.write(f"witness: {result['witness']}\n")
    return EXIT_OK


def cmd_construct(args, out: TextIO) -> int:
    eq = _eq(args)
    if eq.all_equal:
        variant = args.variant or "i"
        kwargs = {}
        if variant == "i":
            kwargs = dict(s=args.s or 0, b_pairs=_split(args.pairs), free_to=Color[args.free_to])
        else:
            kwargs = dict(d=args.d)
            if args.cuts:
                cuts = parse_int_list(args.cuts)
                if len(cuts) != 3:
                    raise UsageError("--cuts needs three integers")
                kwargs["cuts"] = tuple(cuts)
        coloring = construct_equal_coeffs(eq, variant, **kwargs)
    else:
        if args.variant:
            raise DomainError("--variant applies only to equations with a1 = a2 = a3")
        s, _ = forced_singleton(eq, args.s)
        coloring = construct_singleton(eq, s, _split(args.split))
    report = match_structure(eq, coloring)
    if args.json:
        _emit({"equation": eq.to_text(), "coloring": coloring.to_text(), "structure": report.to_dict()}, out)
    else:
        out.write(coloring.to_text() + "\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    eq = _eq(args)
    if not args.coloring:
        raise UsageError("--coloring is required")
    coloring = parse_coloring(args.coloring)
    if coloring.p != eq.p:
        raise UsageError(f"modulus mismatch: equation p={eq.p}, coloring p={coloring.p}")
    witness = find_rainbow(eq, coloring)
    report = match_structure(eq, coloring) if witness is None else None
    if args.json:
        _emit(
            {
                "equation": eq.to_text(),
                "coloring": coloring.to_text(),
                "rainbow_free": witness is None,
                "witness": list(witness.as_tuple()) if witness else None,
                "structure": report.to_dict() if report else None,
            },
            out,
        )
    elif witness is None:
        out.write(f"rainbow-free ({report.clause})\n")
    else:
        out.write(f"rainbow solution x={witness.x} y={witness.y} z={witness.z}\n")
    return EXIT_OK if witness is None else EXIT_RAINBOW


def _parse_fixed_class(text: str) -> Tuple[Color, Tuple[int, ...]]:
    label, _, members = text.partition("=")
    try:
        color = Color[label.strip()]
    except KeyError:
        raise UsageError(f"bad class label in --fixed-class {text!r}") from None
    return color, tuple(sorted(set(parse_int_list(members))))


def cmd_enumerate(args, out: TextIO) -> int:
    eq = _eq(args)
    filt = EnumerationFilter(
        min_class_size=args.min_class,
        fixed_class=_parse_fixed_class(args.fixed_class) if args.fixed_class else None,
        dedupe_by_relabeling=args.dedupe,
        smallest_class_size=args.k,
    )
    scanned = found = 0
    for n, rows in rainbow_free_batches(eq, filt, force=args.force):
        scanned += n
        found += len(rows)
        for row in rows.tolist():
            out.write(_row_text(eq.p, row) + "\n")
    _emit({"equation": eq.to_text(), "scanned": scanned, "rainbow_free": found}, out)
    return EXIT_OK


def _row_text(p: int, row: Sequence[int]) -> str:
    parts = [f"p={p}"]
    for c in Color:
        parts.append(f"{c.name}=" + ",".join(str(x) for x in range(p) if row[x] == c))
    return ";".join(parts)


def canonical_class(p: int, a: Tuple[int, int, int], b: int) -> Tuple[int, int, int, int]:
    """Least (sorted scaled coefficients, scaled b) over all nonzero scalings."""
    return min(tuple(sorted(lam * x % p for x in a)) + (lam * b % p,) for lam in range(1, p))  # type: ignore[return-value]


def survey_equations(p: int, raw: bool = False) -> List[Equation]:
    tuples = itertools.product(range(1, p), range(1, p), range(1, p), range(p))
    if raw:
        return [Equation(p, *t) for t in tuples]
    classes = sorted({canonical_class(p, t[:3], t[3]) for t in tuples})
    return [Equation(p, *t) for t in classes]


def cmd_survey(args, out: TextIO) -> int:
    p = args.p
    if p is None or not is_prime(p):
        raise UsageError("--p must be a prime")
    if p < 5:
        raise DelegateToOracle("survey needs p >= 5")
    if args.check and p > UNFILTERED_LIMIT and not args.force:
        raise BudgetError(f"--check runs exhaustive sweeps; p={p} exceeds {UNFILTERED_LIMIT}")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    status = EXIT_OK
    for eq in survey_equations(p, raw=args.raw):
        result = classify(eq)
        writer.writerow(
            [
                p, eq.a1, eq.a2, eq.a3, eq.b,
                result.verdict, result.reason, result.subgroup.order,
                "" if result.s is None else result.s,
                result.witness.to_text() if result.witness else "",
            ]
        )
        if args.check:
            report = cross_validate(eq, force=args.force)
            if not report.ok:
                status = EXIT_MISMATCH
                sys.stderr.write(json.dumps(report.to_dict()) + "\n")
    return status


def _sets(X: Iterable[int]) -> str:
    return ",".join(str(x) for x in X)


def cmd_scan(args, out: TextIO) -> int:
    which = args.which
    p = args.p
    if which == "minclass":
        eq = _eq(args)
        if p is not None and p != eq.p:
            raise UsageError("--p disagrees with the equation's modulus")
        if args.k not in (2, 3):
            raise UsageError("--k must be 2 or 3")
        count = min_class_scan(eq, args.k)
        _emit({"scan": which, "equation": eq.to_text(), "k": args.k, "violations": count}, out)
        return EXIT_OK if count == 0 else EXIT_MISMATCH
    if p is None or not is_prime(p):
        raise UsageError("--p must be a prime")
    if which == "cd":
        if p <= 7:
            violations = scan_cd(p)
        else:
            violations = scan_cd_sampled(p, args.samples, args.seed)
        lines = (f"X={_sets(X)};Y={_sets(Y)}" for X, Y in violations)
    elif which == "vosper":
        lines = (f"X={_sets(X)};Y={_sets(Y)}" for X, Y in scan_vosper(p, args.max_size))
    elif which == "hr":
        if p > 13 and not args.force:
            raise BudgetError("hr scans are exhaustive; use --force beyond p=13")
        lines = (f"X={_sets(X)};Y={_sets(Y)}" for X, Y in scan_hr(p))
    elif which == "lemma43":
        lines = (format_violation(X, t, d) for X, t, d in iter_lemma43(p))
    else:
        raise UsageError(f"unknown scan {which!r}")
    count = 0
    for line in lines:
        out.write(line + "\n")
        out.flush()
        count += 1
    _emit({"scan": which, "p": p, "violations": count}, out)
    return EXIT_OK if count == 0 else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rainbowzp", description="Rainbow-free 3-colorings of Z_p for a1*x + a2*y + a3*z = b.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, eq=True):
        if eq:
            sp.add_argument("--eq", help='equation, e.g. "p=13;eq=1,-4,3,0"')
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--force", action="store_true", help="ignore the enumeration budget")
        return sp

    sp = common(sub.add_parser("classify", help="rainbow / non-rainbow verdict with a witness"))
    sp.add_argument("--s", type=int)
    sp.add_argument("--split", help="comma list of coset indices sent to class B")
    sp.add_argument("--oracle", action="store_true", help="decide by exhaustive search (needed for p < 5)")
    sp.set_defaults(func=cmd_classify)

    sp = common(sub.add_parser("construct", help="build a rainbow-free coloring"))
    sp.add_argument("--s", type=int)
    sp.add_argument("--split")
    sp.add_argument("--variant", choices=["i", "ii"])
    sp.add_argument("--pairs", help="variant i: indices of reflection blocks sent to B")
    sp.add_argument("--free-to", choices=["B", "C"], default="C")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--cuts", help="variant ii: t1,t2,t3")
    sp.set_defaults(func=cmd_construct)

    sp = common(sub.add_parser("verify", help="search a coloring for a rainbow solution"))
    sp.add_argument("--coloring")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("enumerate", help="stream all rainbow-free colorings"))
    sp.add_argument("--fixed-class", help='e.g. "A=0"')
    sp.add_argument("--min-class", type=int)
    sp.add_argument("--k", type=int, help="exact size of the smallest class")
    sp.add_argument("--dedupe", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = common(sub.add_parser("survey", help="CSV of verdicts over equation classes"), eq=False)
    sp.add_argument("--p", type=int)
    sp.add_argument("--check", action="store_true", help="cross-validate each row against the oracle")
    sp.add_argument("--raw", action="store_true", help="every raw tuple instead of one per class")
    sp.set_defaults(func=cmd_survey)

    sp = common(sub.add_parser("scan", help="property scans"))
    sp.add_argument("which", choices=["cd", "vosper", "hr", "lemma43", "minclass"])
    sp.add_argument("--p", type=int)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--max-size", type=int, default=3)
    sp.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (UsageError, EquationParseError, ColoringParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except BudgetError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
