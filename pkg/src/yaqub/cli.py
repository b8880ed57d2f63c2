"""Command line: ``yaqub classify | verify | explain``.

Exit codes: 0 ok, 1 a theorem disagreement, 2 usage, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import CorpusSpec, default_corpus, report_csv, report_json, run_corpus
from .elements import nilpotency, power_trail
from .errors import OrderOverflow, PreconditionFailed, RingError, RingSyntaxError, WitnessNotFound
from .predicates import is_yaqub_nil_clean
from .rings import DEFAULT_MAX_ORDER, build
from .structure import extract_tripotent, verify_tripotent_witness
from .theorems import THEOREM_IDS, Guards

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N..M, got {text!r}") from None
    return lo_i, hi_i


def _corpus_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--zmod", type=_range, help="range of n for Z/n, e.g. 2..200")
    p.add_argument("--ring", action="append", default=[], metavar="EXPR", help="extra ring expression (repeatable)")
    p.add_argument("--default-corpus", action="store_true", help="use the built-in corpus (implied when no ring is given)")
    p.add_argument("--out", type=Path, help="JSON report path")
    p.add_argument("--csv", type=Path, help="CSV summary path")
    p.add_argument("--full-scan", action="store_true", help="scan every element instead of stopping at the first counterexample")
    p.add_argument("--guard-order", type=int, default=DEFAULT_MAX_ORDER)
    p.add_argument("--guard-ideals", type=int, default=Guards().ideal_enum_max)
    p.add_argument("--guard-clean", type=int, default=Guards().clean_scan_max)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true", help="keep wall-clock timings in the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="yaqub", description="Finite ring classifier and theorem checker.")
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", help="evaluate all predicates over a corpus")
    _corpus_flags(c)
    v = sub.add_parser("verify", help="check theorem statements over a corpus")
    _corpus_flags(v)
    v.add_argument("--theorems", default="all", help="'all' or comma separated ids")
    e = sub.add_parser("explain", help="show the tripotent witness for one element")
    e.add_argument("expr")
    e.add_argument("element", type=int)
    e.add_argument("--guard-order", type=int, default=DEFAULT_MAX_ORDER)
    return parser


def _spec(args, theorems) -> CorpusSpec:
    guards = Guards(args.guard_order, args.guard_ideals, args.guard_clean)
    if args.default_corpus or (args.zmod is None and not args.ring):
        spec = default_corpus(args.seed)
        spec.structured += args.ring
        if args.zmod is not None:
            spec.zmod_range = args.zmod
    else:
        spec = CorpusSpec(zmod_range=args.zmod, structured=list(args.ring), seed=args.seed)
    spec.guards = guards
    spec.theorems = theorems
    try:
        spec.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return spec


def _write(args, report) -> None:
    text = report_json(report, timings=args.timings)
    if args.out:
        args.out.write_text(text)
    if args.csv:
        args.csv.write_text(report_csv(report))


def _print_summary(report, out) -> None:
    s = report["summary"]
    print(f"rings: {s['rings']}", file=out)
    for tag, n in s["case_counts"].items():
        print(f"  {tag}: {n}", file=out)
    print(f"skipped checks: {len(s['skipped'])}", file=out)
    print(f"disagreements: {s['disagreements']}", file=out)
    for d in s["disagreement_list"]:
        print(f"  {d['theorem_id']} on {d['ring']}", file=out)


def cmd_classify(args, out) -> int:
    report = run_corpus(_spec(args, ()), full_scan=args.full_scan, jobs=args.jobs, with_theorems=False)
    _write(args, report)
    if not args.out:
        out.write(report_json(report, timings=args.timings))
    else:
        _print_summary(report, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.theorems == "all":
        theorems = THEOREM_IDS
    else:
        theorems = tuple(t.strip() for t in args.theorems.split(",") if t.strip())
    report = run_corpus(_spec(args, theorems), full_scan=args.full_scan, jobs=args.jobs)
    _write(args, report)
    _print_summary(report, out)
    return EXIT_DISAGREE if report["summary"]["disagreements"] else EXIT_OK


def explain(expr: str, element: int, max_order: int = DEFAULT_MAX_ORDER) -> str:
    R = build(expr, max_order)
    if not 0 <= element < R.order:
        raise UsageError(f"element index {element} outside 0..{R.order - 1}")
    a = element
    lines = [f"ring {R.label} (order {R.order}), a = {R.format(a)} [index {a}]"]
    trail, _ = power_trail(R, a)
    lines.append("powers: " + ", ".join(R.format(x) for x in trail))
    a3 = R.pow(a, 3)
    for sign, v in (("a - a^3", R.sub(a, a3)), ("a + a^3", R.add(a, a3))):
        nil = nilpotency(R, v)
        state = f"nilpotent, index {nil.index}" if nil.is_nilpotent else "not nilpotent"
        lines.append(f"{sign} = {R.format(v)}: {state}")
    try:
        w = extract_tripotent(R, a)
    except PreconditionFailed:
        verdict = is_yaqub_nil_clean(R)
        lines.append("no tripotent witness: neither a - a^3 nor a + a^3 is nilpotent")
        if not verdict.holds:
            lines.append(f"{R.label} is not Yaqub nil-clean")
        return "\n".join(lines)
    except WitnessNotFound as exc:
        lines.append(f"witness search failed: {exc}")
        return "\n".join(lines)
    target = "a - e" if w.mode == "minus" else "a + 3e"
    lines.append(f"witness e = {R.format(w.e)} [index {w.e}] from {w.source}, mode {w.mode}")
    lines.append(f"check: e^3 = {R.format(R.pow(w.e, 3))}, ae = {R.format(R.mul(a, w.e))}, "
                 f"ea = {R.format(R.mul(w.e, a))}, {target} nilpotent of index {w.nil_index}")
    lines.append("verified" if verify_tripotent_witness(R, w) else "VERIFICATION FAILED")
    return "\n".join(lines)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "classify":
            return cmd_classify(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        print(explain(args.expr, args.element, args.guard_order), file=out)
        return EXIT_OK
    except (UsageError, RingSyntaxError, OrderOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, RingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - report and map to the internal exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
