"""Theorem verification harness.

Each theorem id maps to a routine that evaluates both sides of the statement
on one finite ring, independently, and reports whether they agree.  For
implications ``left`` is the hypothesis and ``right`` the conclusion.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .elements import jacobson_radical, nilpotency, nilpotent_mask, special_elements
from .errors import DegenerateRing, SizeGuard
from .ideals import IDEAL_ENUM_MAX, all_ideals, corner, generated_subring, quotient
from .predicates import (
    CLEAN_SCAN_MAX,
    clean_decomposition,
    is_2uu,
    is_exchange,
    is_hirano,
    is_periodic,
    is_strongly_2_nil_clean,
    is_strongly_nil_clean,
    is_yaqub_nil_clean,
    satisfies_identity,
    squares_strongly_weakly_nil_clean,
)
from .rings import DEFAULT_MAX_ORDER, FiniteRing, MatrixRing, ProductRing
from .structure import hom_image_detect, residue_form, structure_by_components

THEOREM_IDS = (
    "L2.1", "T2.2", "L2.3", "P2.4", "T2.5", "C2.6", "L2.7", "T2.8",
    "T3.1", "C3.2", "C3.3", "C3.4", "T3.6", "C3.7", "T3.10",
    "P4.1", "L4.4", "L4.5", "T4.6",
    "L5.1", "L5.2", "L5.3", "T5.4", "C5.5",
)


@dataclass(frozen=True)
class Guards:
    max_order: int = DEFAULT_MAX_ORDER
    ideal_enum_max: int = IDEAL_ENUM_MAX
    clean_scan_max: int = CLEAN_SCAN_MAX


@dataclass
class VerificationRecord:
    ring: str
    theorem_id: str
    left: Any = None
    right: Any = None
    agree: bool | None = None
    witnesses: dict[str, Any] = field(default_factory=dict)
    skipped_reason: str | None = None
    millis: float | None = None

    @property
    def skipped(self) -> bool:
        return self.skipped_reason is not None

    def to_json(self, timings: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "ring": self.ring, "theorem_id": self.theorem_id, "left": self.left,
            "right": self.right, "agree": self.agree, "witnesses": self.witnesses,
        }
        if self.skipped_reason is not None:
            out["skipped_reason"] = self.skipped_reason
        out["millis"] = round(self.millis, 3) if timings and self.millis is not None else None
        return out


class NotApplicable(Exception):
    """The theorem does not speak about rings of this shape."""


# -- cached evaluations -----------------------------------------------------


def _cached(R: FiniteRing, key: str, fn: Callable[[], Any]) -> Any:
    store = R._cache.setdefault("theorems", {})
    if key not in store:
        store[key] = fn()
    return store[key]


def _ync(R): return _cached(R, "ync", lambda: is_yaqub_nil_clean(R).holds)
def _s2nc(R): return _cached(R, "s2nc", lambda: is_strongly_2_nil_clean(R).holds)
def _snc(R): return _cached(R, "snc", lambda: is_strongly_nil_clean(R).holds)
def _hirano(R): return _cached(R, "hirano", lambda: is_hirano(R).holds)
def _2uu(R): return _cached(R, "2uu", lambda: is_2uu(R).holds)
def _periodic(R): return _cached(R, "periodic", lambda: is_periodic(R).holds)


def _exchange(R, g: Guards):
    return _cached(R, f"exchange@{g.clean_scan_max}", lambda: is_exchange(R, g.clean_scan_max).holds)


def _nil_multiple(R: FiniteRing, k: int) -> bool:
    return nilpotency(R, R.from_int(k)).is_nilpotent


def _residue_form(R):
    return _cached(R, "residue_form", lambda: residue_form(R))


# -- shape helpers ----------------------------------------------------------


def _power_factor(R: FiniteRing) -> FiniteRing:
    if not isinstance(R, ProductRing) or len(R.factors) < 2:
        raise NotApplicable("not a direct product")
    exprs = {str(f.expr) for f in R.factors}
    if len(exprs) != 1:
        raise NotApplicable("factors are not all the same ring")
    return R.factors[0]


def _triangular_base(R: FiniteRing) -> FiniteRing:
    if not isinstance(R, MatrixRing) or not R.upper or R.k < 2:
        raise NotApplicable("not T_n(R) with n >= 2")
    return R.base


def closure_samples(R: FiniteRing, seed: int = 0, count: int = 4) -> list[FiniteRing]:
    """Seeded sample of unital generated subrings and corners eRe (e != 0, 1)."""
    rng = random.Random(f"{seed}:{R.label}")
    out: list[FiniteRing] = []
    elems = list(range(R.order))
    for gens in ([rng.choice(elems)] for _ in range(count // 2)):
        out.append(generated_subring(R, gens))
    if R.order >= 2:
        out.append(generated_subring(R, rng.sample(elems, 2)))
    idem = [int(e) for e in np.flatnonzero(special_elements(R).idempotent) if e not in (R.zero, R.one)]
    for e in rng.sample(idem, min(len(idem), count)):
        out.append(corner(R, e))
    return out


def _nil_ideals(R: FiniteRing, g: Guards):
    ideals = all_ideals(R, g.ideal_enum_max)
    return [I for I in ideals if np.all(nilpotent_mask(R, I.array()))]


# -- theorem routines: return (left, right, agree, witnesses) ----------------


def _equiv(left, right, **wit):
    return left, right, left == right, wit


def _implies(hyp, concl, **wit):
    return hyp, concl, (not hyp) or concl, wit


def _l2_1(R, g, seed):
    return _equiv(_ync(R), squares_strongly_weakly_nil_clean(R).holds)


def _t2_2(R, g, seed):
    J = jacobson_radical(R)
    S = quotient(R, J.array())
    ident = satisfies_identity(S, "x3_eq_pm_x")
    wit = {"radical_order": len(J.elements), "radical_is_nil": J.is_nil}
    if not ident.holds:
        wit["residue_counterexample"] = ident.witness
    return _equiv(_ync(R), J.is_nil and ident.holds, **wit)


def _closure(R, g, seed, pred, kinds):
    hyp = pred(R)
    samples = [S for S in closure_samples(R, seed)
               if S.order >= 2 and (isinstance(S.expr, kinds) if kinds else True)]
    values = {S.label: pred(S) for S in samples}
    return _implies(hyp, all(values.values()), samples=values)


def _l2_3(R, g, seed):
    from .expr import Corner, Subring
    return _closure(R, g, seed, _ync, (Subring, Corner))


def _p2_4(R, g, seed):
    from .expr import Corner
    return _closure(R, g, seed, _ync, (Corner,))


def _p4_1(R, g, seed):
    from .expr import Corner, Subring
    return _closure(R, g, seed, _hirano, (Subring, Corner))


def _t2_5(R, g, seed):
    if not isinstance(R, ProductRing) or len(R.factors) < 2:
        raise NotApplicable("not a direct product")
    facs = R.factors
    each = [_ync(f) for f in facs]
    not_s2 = [f.label for f in facs if not _s2nc(f)]
    right = all(each) and len(not_s2) <= 1
    return _equiv(_ync(R), right, factors_yaqub_nil_clean=each, not_strongly_2_nil_clean=not_s2)


def _c2_6(R, g, seed):
    F = _power_factor(R)
    left, right, extra = _ync(R), _s2nc(F), _s2nc(R)
    return left, right, left == right == extra, {"power_strongly_2_nil_clean": extra, "factor": F.label}


def _nil_quotient_law(R, g, pred):
    left = pred(R)
    per = {}
    for I in _nil_ideals(R, g):
        per[",".join(map(str, I.elements))] = pred(quotient(R, I))
    return left, per, all(v == left for v in per.values()), {"nil_ideals": len(per)}


def _l2_7(R, g, seed):
    return _nil_quotient_law(R, g, _ync)


def _l4_4(R, g, seed):
    return _nil_quotient_law(R, g, _hirano)


def _t2_8(R, g, seed):
    B = _triangular_base(R)
    left, right, extra = _ync(R), _s2nc(B), _s2nc(R)
    return left, right, left == right == extra, {"triangular_strongly_2_nil_clean": extra, "base": B.label}


def _t3_1(R, g, seed):
    holds, tag, evidence = structure_by_components(R)
    return _equiv(_ync(R), holds, case=tag, primes=[e["prime"] for e in evidence])


def _c3_2(R, g, seed):
    a5 = satisfies_identity(R, "a_minus_a5_nil").holds
    h15 = hom_image_detect(R, "Z3xZ5", g.ideal_enum_max)
    h25 = hom_image_detect(R, "Z5xZ5", g.ideal_enum_max)
    right = a5 and not h15.holds and not h25.holds
    return _equiv(_ync(R), right, a_minus_a5_nil=a5, image_Z3xZ5=h15.holds, image_Z5xZ5=h25.holds)


def _c3_3(R, g, seed):
    six = _nil_multiple(R, 6)
    return _equiv(_s2nc(R), six and _ync(R), six_nilpotent=six)


def _c3_4(R, g, seed):
    two = _nil_multiple(R, 2)
    return _equiv(_snc(R), two and _ync(R), two_nilpotent=two)


def _t3_6(R, g, seed):
    holds, tag, ev = _residue_form(R)
    return _equiv(_ync(R), holds, form=tag, residue=ev["residue"])


def _c3_7(R, g, seed):
    holds, tag, ev = _residue_form(R)
    per = _periodic(R)
    return _equiv(_ync(R), per and holds, periodic=per, form=tag)


def commuting_tripotent_condition(R: FiniteRing, chunk: int = 512) -> tuple[bool, int | None]:
    """Every a has a commuting tripotent e with a - e or a + 3e nilpotent
    (searched over all tripotents of R).  Returns (holds, first failing a)."""
    trips = np.flatnonzero(special_elements(R).tripotent)
    three = [R.add(int(e), R.add(int(e), int(e))) for e in trips]
    for lo in range(0, R.order, chunk):
        xs = np.arange(lo, min(lo + chunk, R.order), dtype=np.int64)
        ok = np.zeros(xs.size, dtype=bool)
        for e, e3 in zip(trips, three):
            rest = xs[~ok]
            if rest.size == 0:
                break
            e = int(e)
            good = (R.mul(rest, e) == R.mul(e, rest)) & (
                nilpotent_mask(R, R.sub(rest, e)) | nilpotent_mask(R, R.add(rest, e3)))
            ok[np.flatnonzero(~ok)[good]] = True
        if not ok.all():
            return False, int(xs[~ok][0])
    return True, None


def _t3_10(R, g, seed):
    holds, bad = commuting_tripotent_condition(R)
    wit = {} if bad is None else {"a": bad, "value": R.format(bad)}
    return _equiv(_ync(R), holds, **wit)


def _l4_5(R, g, seed):
    F = _power_factor(R)
    left, right, extra = _hirano(R), _2uu(F), _2uu(R)
    return left, right, left == right == extra, {"power_two_uu": extra, "factor": F.label}


def _t4_6(R, g, seed):
    B = _triangular_base(R)
    left, right, extra = _hirano(R), _2uu(B), _2uu(R)
    return left, right, left == right == extra, {"triangular_two_uu": extra, "base": B.label}


def _l5_1(R, g, seed):
    hyp = _exchange(R, g)
    dec = clean_decomposition(R, R.from_int(-2))
    wit = {} if dec is None else {"idempotent": dec[0], "unit": dec[1]}
    return _implies(hyp, dec is not None, **wit)


def _l5_2(R, g, seed):
    return _implies(_exchange(R, g) and _hirano(R), _nil_multiple(R, 30))


def _l5_3(R, g, seed):
    return _implies(_exchange(R, g) and _hirano(R), jacobson_radical(R).is_nil)


def _t5_4(R, g, seed):
    ex, hi = _exchange(R, g), _hirano(R)
    return _equiv(_ync(R), ex and hi, exchange=ex, hirano=hi)


def _c5_5(R, g, seed):
    per, hi = _periodic(R), _hirano(R)
    return _equiv(_ync(R), per and hi, periodic=per, hirano=hi)


_ROUTINES: dict[str, Callable] = {
    "L2.1": _l2_1, "T2.2": _t2_2, "L2.3": _l2_3, "P2.4": _p2_4, "T2.5": _t2_5,
    "C2.6": _c2_6, "L2.7": _l2_7, "T2.8": _t2_8, "T3.1": _t3_1, "C3.2": _c3_2,
    "C3.3": _c3_3, "C3.4": _c3_4, "T3.6": _t3_6, "C3.7": _c3_7, "T3.10": _t3_10,
    "P4.1": _p4_1, "L4.4": _l4_4, "L4.5": _l4_5, "T4.6": _t4_6, "L5.1": _l5_1,
    "L5.2": _l5_2, "L5.3": _l5_3, "T5.4": _t5_4, "C5.5": _c5_5,
}


def verify_theorem(R: FiniteRing, theorem_id: str, guards: Guards = Guards(), seed: int = 0) -> VerificationRecord:
    """Evaluate both sides of ``theorem_id`` on R; guard overruns become skips."""
    if theorem_id not in _ROUTINES:
        raise ValueError(f"unknown theorem id {theorem_id!r}")
    record = VerificationRecord(ring=R.label, theorem_id=theorem_id)
    start = time.perf_counter()
    try:
        left, right, agree, wit = _ROUTINES[theorem_id](R, guards, seed)
        record.left, record.right, record.agree, record.witnesses = left, right, bool(agree), wit
    except SizeGuard as exc:
        record.skipped_reason = f"size guard: {exc}"
    except NotApplicable as exc:
        record.skipped_reason = f"not applicable: {exc}"
    except DegenerateRing as exc:
        record.skipped_reason = f"degenerate ring: {exc}"
    record.millis = (time.perf_counter() - start) * 1000.0
    return record
