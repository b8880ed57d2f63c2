"""Ring corpora, batch evaluation and report emission."""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .elements import special_elements
from .errors import OrderOverflow, SizeGuard
from .expr import Corner, Quotient, Subring, parse_ring_expr
from .ideals import additive_basis, ideal_generated
from .predicates import PREDICATE_IDS, evaluate
from .rings import build
from .structure import classify_theorem_3_1
from .theorems import THEOREM_IDS, Guards, verify_theorem

PAIR_POOL = ("Z/2", "Z/3", "Z/4", "Z/5", "Z/9", "Z/25")
TRIANGULAR_BASES = ("Z/2", "Z/3", "Z/4", "Z/5", "Z/9")
POLY_QUOTIENTS = ("Z/2[x]/(x^2)", "Z/4[x]/(x^2)", "Z/5[x]/(x^2)", "Z/25[x]/(x^3)")
# bases for seeded quotient/subring/corner samples
DERIVED_BASES = ("Z/2 x Z/4", "Z/3 x Z/9", "T2(Z/4)", "T2(Z/3)", "M2(Z/2)", "Z/4[x]/(x^2)")


def structured_corpus() -> list[str]:
    out = []
    for b in TRIANGULAR_BASES:
        out += [f"T2({b})", f"T3({b})"]
    out += ["M2(Z/2)", "M2(Z/3)"]
    for i, a in enumerate(PAIR_POOL):
        for b in PAIR_POOL[i:]:
            out.append(f"{a} x {b}")
    out += list(POLY_QUOTIENTS)
    return out


def derived_samples(seed: int = 0, per_base: int = 1) -> list[str]:
    """Quotients by principal ideals, generated subrings and corners picked with ``seed``."""
    rng = random.Random(seed)
    out = []
    for text in DERIVED_BASES:
        R = build(text)
        for _ in range(per_base):
            g = rng.randrange(1, R.order)
            basis = tuple(int(x) for x in additive_basis(R, ideal_generated(R, [g]).array()))
            if len(basis) and len(ideal_generated(R, [g]).elements) < R.order:
                out.append(str(Quotient(R.expr, basis)))
            out.append(str(Subring(R.expr, (rng.randrange(R.order),))))
            idem = [int(e) for e in np.flatnonzero(special_elements(R).idempotent)
                    if e not in (R.zero, R.one)]
            if idem:
                out.append(str(Corner(R.expr, rng.choice(idem))))
    return out


@dataclass
class CorpusSpec:
    zmod_range: tuple[int, int] | None = (2, 200)
    structured: list[str] = field(default_factory=list)
    guards: Guards = Guards()
    theorems: tuple[str, ...] = THEOREM_IDS
    seed: int = 0

    def validate(self) -> None:
        if self.zmod_range is not None:
            lo, hi = self.zmod_range
            if lo < 2 or hi < lo:
                raise ValueError(f"bad Z/n range {lo}..{hi}")
        for g in (self.guards.max_order, self.guards.ideal_enum_max, self.guards.clean_scan_max):
            if g <= 0:
                raise ValueError("guards must be positive")
        for t in self.theorems:
            if t not in THEOREM_IDS:
                raise ValueError(f"unknown theorem id {t!r}")
        for text in self.structured:
            parse_ring_expr(text)

    def expressions(self) -> list[str]:
        """Canonical rendered expressions, deduplicated and sorted."""
        exprs = set()
        if self.zmod_range is not None:
            exprs.update(f"Z/{n}" for n in range(self.zmod_range[0], self.zmod_range[1] + 1))
        exprs.update(str(parse_ring_expr(t)) for t in self.structured)
        return sorted(exprs)


def default_corpus(seed: int = 0) -> CorpusSpec:
    return CorpusSpec(zmod_range=(2, 200), structured=structured_corpus() + derived_samples(seed), seed=seed)


def evaluate_ring(text: str, guards: Guards = Guards(), theorems=(), full_scan: bool = False,
                  seed: int = 0) -> dict[str, Any]:
    """One report row: predicate verdicts, classification and theorem records."""
    row: dict[str, Any] = {"ring": text}
    start = time.perf_counter()
    try:
        R = build(text, guards.max_order)
    except OrderOverflow as exc:
        row["skipped_reason"] = f"order guard: {exc}"
        row["millis"] = (time.perf_counter() - start) * 1000.0
        return row
    row["order"] = R.order
    verdicts = {}
    for pid in PREDICATE_IDS:
        try:
            verdicts[pid] = evaluate(R, pid, full_scan=full_scan, clean_guard=guards.clean_scan_max).to_json()
        except SizeGuard as exc:
            verdicts[pid] = {"predicate": pid, "holds": None, "skipped_reason": f"size guard: {exc}"}
    row["verdicts"] = verdicts
    row["classification"] = classify_theorem_3_1(R).to_json()
    row["theorems"] = [verify_theorem(R, t, guards, seed).to_json() for t in theorems]
    row["millis"] = (time.perf_counter() - start) * 1000.0
    return row


def _job(args):
    return evaluate_ring(*args)


def run_corpus(spec: CorpusSpec, full_scan: bool = False, jobs: int = 1, with_theorems: bool = True) -> dict[str, Any]:
    spec.validate()
    exprs = spec.expressions()
    theorems = tuple(spec.theorems) if with_theorems else ()
    args = [(e, spec.guards, theorems, full_scan, spec.seed) for e in exprs]
    start = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_job, args, chunksize=4))
    else:
        rows = [_job(a) for a in args]
    rows.sort(key=lambda r: r["ring"])
    return {"rings": rows, "summary": summarize(rows, (time.perf_counter() - start) * 1000.0)}


def disagreements(rows) -> list[tuple[str, str]]:
    return [(r["ring"], t["theorem_id"]) for r in rows for t in r.get("theorems", ())
            if t.get("agree") is False]


def summarize(rows, millis: float | None = None) -> dict[str, Any]:
    counts = {pid: 0 for pid in PREDICATE_IDS}
    cases: dict[str, int] = {}
    skipped = []
    for r in rows:
        if "verdicts" not in r:
            skipped.append({"ring": r["ring"], "reason": r["skipped_reason"]})
            continue
        for pid, v in r["verdicts"].items():
            counts[pid] += bool(v.get("holds"))
        tag = r["classification"]["case"]
        cases[tag] = cases.get(tag, 0) + 1
        skipped += [{"ring": r["ring"], "theorem_id": t["theorem_id"], "reason": t["skipped_reason"]}
                    for t in r["theorems"] if "skipped_reason" in t]
    bad = disagreements(rows)
    return {
        "rings": len(rows),
        "holds_counts": counts,
        "case_counts": dict(sorted(cases.items())),
        "disagreements": len(bad),
        "disagreement_list": [{"ring": a, "theorem_id": b} for a, b in bad],
        "skipped": skipped,
        "millis": millis,
    }


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: (None if k == "millis" else _strip_timings(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def report_json(report: dict[str, Any], timings: bool = False) -> str:
    """Timings are nulled unless asked for, so reruns are byte-identical."""
    body = report if timings else _strip_timings(report)
    return json.dumps(body, indent=2, sort_keys=True, default=_default) + "\n"


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(type(o))


def report_csv(report: dict[str, Any]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["ring", "order", *PREDICATE_IDS, "case", "disagreements", "skipped_reason"])
    for r in report["rings"]:
        if "verdicts" not in r:
            w.writerow([r["ring"], "", *[""] * len(PREDICATE_IDS), "", "", r["skipped_reason"]])
            continue
        cells = []
        for pid in PREDICATE_IDS:
            h = r["verdicts"][pid].get("holds")
            cells.append("" if h is None else str(h).lower())
        bad = [t["theorem_id"] for t in r["theorems"] if t.get("agree") is False]
        w.writerow([r["ring"], r["order"], *cells, r["classification"]["case"], ";".join(bad), ""])
    return buf.getvalue()

