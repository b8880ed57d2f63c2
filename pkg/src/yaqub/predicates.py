"""Witness-carrying decision procedures for the ring classes.

Every predicate takes a ring of order >= 2 and returns a :class:`Verdict`.
Universal predicates stop at the first counterexample (smallest index)
unless ``full_scan`` is set, in which case ``stats`` also counts failures.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .elements import idempotent_power, nilpotency, nilpotent_mask, power_trail, special_elements
from .errors import DegenerateRing, SizeGuard
from .rings import FiniteRing, characteristic
from .verdict import Verdict

CLEAN_SCAN_MAX = 1024
_SCAN_CHUNK = 4096

PREDICATE_IDS = (
    "yaqub_nil_clean",
    "strongly_nil_clean",
    "strongly_2_nil_clean",
    "strongly_weakly_nil_clean",
    "hirano",
    "two_uu",
    "exchange",
    "clean",
    "strongly_clean",
    "periodic",
    "boolean",
    "yaqub_ring",
    "iso_z5",
)

IDENTITY_TAGS = ("x2_eq_x", "x3_eq_x", "x3_eq_pm_x", "x5_eq_x", "a_minus_a5_nil")


def require_nondegenerate(R: FiniteRing) -> None:
    if R.order < 2 or R.one is None:
        raise DegenerateRing(f"{R.label} is the zero ring or has no identity")


def _trail(R: FiniteRing, x: int) -> list[int]:
    return list(nilpotency(R, x).trail)


def _forall(R: FiniteRing, pid: str, domain: np.ndarray, ok: Callable[[np.ndarray], np.ndarray],
            witness: Callable[[int], dict], full_scan: bool) -> Verdict:
    scanned = 0
    first_bad = None
    failures = 0
    for start in range(0, domain.size, _SCAN_CHUNK):
        xs = domain[start:start + _SCAN_CHUNK]
        good = ok(xs)
        bad = np.flatnonzero(~good)
        if bad.size:
            if first_bad is None:
                first_bad = int(xs[bad[0]])
                if not full_scan:
                    scanned += int(bad[0]) + 1
                    break
            failures += int(bad.size)
        scanned += int(xs.size)
    stats = {"scanned": scanned, "domain": int(domain.size)}
    if full_scan:
        stats["failures"] = failures
    if first_bad is None:
        return Verdict(pid, True, None, stats)
    return Verdict(pid, False, witness(first_bad), stats)


def _power(R: FiniteRing, xs, k: int):
    return R.pow(xs, k)


# -- nil-clean family -------------------------------------------------------


def is_yaqub_nil_clean(R: FiniteRing, full_scan: bool = False) -> Verdict:
    """a - a^3 or a + a^3 nilpotent for every a."""
    require_nondegenerate(R)

    def ok(xs):
        cube = _power(R, xs, 3)
        return nilpotent_mask(R, R.sub(xs, cube)) | nilpotent_mask(R, R.add(xs, cube))

    def witness(a):
        cube = R.pow(a, 3)
        return {"a": a, "value": R.format(a),
                "minus_trail": _trail(R, R.sub(a, cube)),
                "plus_trail": _trail(R, R.add(a, cube))}

    return _forall(R, "yaqub_nil_clean", R.elements(), ok, witness, full_scan)


def is_strongly_nil_clean(R: FiniteRing, full_scan: bool = False) -> Verdict:
    require_nondegenerate(R)

    def ok(xs):
        return nilpotent_mask(R, R.sub(xs, R.mul(xs, xs)))

    def witness(a):
        return {"a": a, "value": R.format(a), "minus_trail": _trail(R, R.sub(a, R.mul(a, a)))}

    return _forall(R, "strongly_nil_clean", R.elements(), ok, witness, full_scan)


def is_strongly_2_nil_clean(R: FiniteRing, full_scan: bool = False) -> Verdict:
    require_nondegenerate(R)

    def ok(xs):
        return nilpotent_mask(R, R.sub(xs, _power(R, xs, 3)))

    def witness(a):
        return {"a": a, "value": R.format(a), "minus_trail": _trail(R, R.sub(a, R.pow(a, 3)))}

    return _forall(R, "strongly_2_nil_clean", R.elements(), ok, witness, full_scan)


def is_strongly_weakly_nil_clean(R: FiniteRing, full_scan: bool = False) -> Verdict:
    require_nondegenerate(R)

    def ok(xs):
        sq = R.mul(xs, xs)
        return nilpotent_mask(R, R.sub(xs, sq)) | nilpotent_mask(R, R.add(xs, sq))

    def witness(a):
        sq = R.mul(a, a)
        return {"a": a, "value": R.format(a),
                "minus_trail": _trail(R, R.sub(a, sq)), "plus_trail": _trail(R, R.add(a, sq))}

    return _forall(R, "strongly_weakly_nil_clean", R.elements(), ok, witness, full_scan)


def squares_strongly_weakly_nil_clean(R: FiniteRing) -> Verdict:
    """Every square a^2 has a^2 - a^4 or a^2 + a^4 nilpotent."""
    require_nondegenerate(R)

    def ok(xs):
        sq = R.mul(xs, xs)
        fourth = R.mul(sq, sq)
        return nilpotent_mask(R, R.sub(sq, fourth)) | nilpotent_mask(R, R.add(sq, fourth))

    def witness(a):
        return {"a": a, "value": R.format(a)}

    return _forall(R, "squares_strongly_weakly_nil_clean", R.elements(), ok, witness, False)


# -- unit conditions --------------------------------------------------------


def is_hirano(R: FiniteRing, full_scan: bool = False) -> Verdict:
    """1 - u^2 or 1 + u^2 nilpotent for every unit u."""
    require_nondegenerate(R)
    units = np.flatnonzero(special_elements(R).unit)

    def ok(us):
        sq = R.mul(us, us)
        return nilpotent_mask(R, R.sub(R.one, sq)) | nilpotent_mask(R, R.add(R.one, sq))

    def witness(u):
        sq = R.mul(u, u)
        return {"u": u, "value": R.format(u),
                "one_minus_u2_trail": _trail(R, R.sub(R.one, sq)),
                "one_plus_u2_trail": _trail(R, R.add(R.one, sq))}

    return _forall(R, "hirano", units, ok, witness, full_scan)


def is_2uu(R: FiniteRing, full_scan: bool = False) -> Verdict:
    """1 - u^2 nilpotent for every unit u."""
    require_nondegenerate(R)
    units = np.flatnonzero(special_elements(R).unit)

    def ok(us):
        return nilpotent_mask(R, R.sub(R.one, R.mul(us, us)))

    def witness(u):
        return {"u": u, "value": R.format(u),
                "one_minus_u2_trail": _trail(R, R.sub(R.one, R.mul(u, u)))}

    return _forall(R, "two_uu", units, ok, witness, full_scan)


# -- exchange and clean -----------------------------------------------------


def right_ideal_hits(R: FiniteRing, target: int) -> np.ndarray:
    """Mask over a: target lies in aR."""
    tables = R.tables()
    if tables is not None:
        return (tables[1] == target).any(axis=1)
    x = R.elements()
    out = np.zeros(R.order, dtype=bool)
    step = max(1, (1 << 20) // R.order)
    for start in range(0, R.order, step):
        rows = x[start:start + step]
        out[start:start + step] = (R.mul(rows[:, None], x[None, :]) == target).any(axis=1)
    return out


def _guard(R: FiniteRing, guard: int, what: str) -> None:
    if R.order > guard:
        raise SizeGuard(f"{what}: order {R.order} exceeds scan guard {guard}")


def exchange_witnesses(R: FiniteRing, guard: int = CLEAN_SCAN_MAX) -> np.ndarray:
    """For every a, the smallest idempotent e with e in aR and 1-e in (1-a)R, or -1."""
    _guard(R, guard, "exchange")
    x = R.elements()
    one_minus = R.sub(R.one, x)
    best = np.full(R.order, -1, dtype=np.int64)
    for e in np.flatnonzero(special_elements(R).idempotent):
        open_ = best < 0
        if not open_.any():
            break
        hit = right_ideal_hits(R, int(e)) & right_ideal_hits(R, R.sub(R.one, int(e)))[one_minus]
        best[open_ & hit] = e
    return best


def is_exchange(R: FiniteRing, guard: int = CLEAN_SCAN_MAX) -> Verdict:
    require_nondegenerate(R)
    best = exchange_witnesses(R, guard)
    stats = {"scanned": R.order, "domain": R.order}
    missing = np.flatnonzero(best < 0)
    if missing.size:
        a = int(missing[0])
        return Verdict("exchange", False, {"a": a, "value": R.format(a)}, stats)
    return Verdict("exchange", True, {"idempotent_for": [int(e) for e in best]}, stats)


def clean_witnesses(R: FiniteRing, strong: bool = False, guard: int = CLEAN_SCAN_MAX) -> np.ndarray:
    """For every a, the smallest idempotent e with a - e a unit (commuting with a if strong)."""
    _guard(R, guard, "strongly_clean" if strong else "clean")
    x = R.elements()
    units = special_elements(R).unit
    best = np.full(R.order, -1, dtype=np.int64)
    for e in np.flatnonzero(special_elements(R).idempotent):
        open_ = best < 0
        if not open_.any():
            break
        hit = units[R.sub(x, int(e))]
        if strong:
            hit &= R.mul(int(e), x) == R.mul(x, int(e))
        best[open_ & hit] = e
    return best


def _clean_verdict(R: FiniteRing, strong: bool, guard: int) -> Verdict:
    require_nondegenerate(R)
    pid = "strongly_clean" if strong else "clean"
    best = clean_witnesses(R, strong, guard)
    stats = {"scanned": R.order, "domain": R.order}
    missing = np.flatnonzero(best < 0)
    if missing.size:
        a = int(missing[0])
        return Verdict(pid, False, {"a": a, "value": R.format(a)}, stats)
    return Verdict(pid, True, {"idempotent_for": [int(e) for e in best]}, stats)


def is_clean(R: FiniteRing, guard: int = CLEAN_SCAN_MAX) -> Verdict:
    return _clean_verdict(R, False, guard)


def is_strongly_clean(R: FiniteRing, guard: int = CLEAN_SCAN_MAX) -> Verdict:
    return _clean_verdict(R, True, guard)


def clean_decomposition(R: FiniteRing, a, strong: bool = False) -> tuple[int, int] | None:
    """Smallest idempotent e (and unit u = a - e) with a = e + u, or None."""
    a = R.idx(a)
    units = special_elements(R).unit
    for e in np.flatnonzero(special_elements(R).idempotent):
        u = R.sub(a, int(e))
        if units[u] and (not strong or R.mul(int(e), a) == R.mul(a, int(e))):
            return int(e), int(u)
    return None


# -- periodicity ------------------------------------------------------------


def periodic_exponents(R: FiniteRing, a) -> tuple[int, int]:
    """Minimal (m, n), m < n, with a^m = a^n (first collision of the power trail)."""
    trail, m = power_trail(R, a)
    if m is None:  # trail stopped at its first zero
        k = len(trail)
        return k, k + 1
    return m, len(trail)


def _pow_each(R: FiniteRing, xs: np.ndarray, ks: np.ndarray) -> np.ndarray:
    result = np.full(xs.shape, R.one, dtype=np.int64)
    base = xs.copy()
    ks = ks.copy()
    while ks.any():
        sel = (ks & 1).astype(bool)
        result[sel] = R.mul(result[sel], base[sel])
        ks >>= 1
        base = R.mul(base, base)
    return result


def collision_pairs(R: FiniteRing, xs) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`periodic_exponents` over an array of elements."""
    xs = np.asarray(xs, dtype=np.int64)
    z = R.mul(idempotent_power(R, xs), xs)  # a power of x inside its cycle
    period = np.ones(xs.shape, dtype=np.int64)
    cur = R.mul(z, xs)
    active = cur != z
    while active.any():
        cur[active] = R.mul(cur[active], xs[active])
        period[active] += 1
        active &= cur != z
    u = xs.copy()
    v = R.mul(xs, _pow_each(R, xs, period))
    m = np.ones(xs.shape, dtype=np.int64)
    active = u != v
    while active.any():
        u[active] = R.mul(u[active], xs[active])
        v[active] = R.mul(v[active], xs[active])
        m[active] += 1
        active &= u != v
    return m, m + period


def is_periodic(R: FiniteRing) -> Verdict:
    """Every element has distinct exponents m < n with a^m = a^n."""
    require_nondegenerate(R)
    m, n = collision_pairs(R, R.elements())
    bad = np.flatnonzero(~(m < n))
    stats = {"scanned": R.order, "domain": R.order, "max_n": int(n.max())}
    if bad.size:
        a = int(bad[0])
        return Verdict("periodic", False, {"a": a, "value": R.format(a)}, stats)
    return Verdict("periodic", True, None, stats)


# -- identities -------------------------------------------------------------


def _identity_ok(R: FiniteRing, tag: str) -> Callable[[np.ndarray], np.ndarray]:
    if tag == "x2_eq_x":
        return lambda xs: R.mul(xs, xs) == xs
    if tag == "x3_eq_x":
        return lambda xs: R.pow(xs, 3) == xs
    if tag == "x3_eq_pm_x":
        return lambda xs: (R.pow(xs, 3) == xs) | (R.pow(xs, 3) == R.neg(xs))
    if tag == "x5_eq_x":
        return lambda xs: R.pow(xs, 5) == xs
    if tag == "a_minus_a5_nil":
        return lambda xs: nilpotent_mask(R, R.sub(xs, R.pow(xs, 5)))
    raise ValueError(f"unknown identity tag {tag!r}; expected one of {IDENTITY_TAGS}")


def satisfies_identity(R: FiniteRing, tag: str, full_scan: bool = False) -> Verdict:
    """Element-wise identity check; ``x3_eq_pm_x`` allows the sign to vary with x."""
    require_nondegenerate(R)
    ok = _identity_ok(R, tag)

    def witness(a):
        return {"a": a, "value": R.format(a)}

    return _forall(R, tag, R.elements(), ok, witness, full_scan)


def is_boolean(R: FiniteRing) -> Verdict:
    v = satisfies_identity(R, "x2_eq_x")
    v.predicate_id = "boolean"
    return v


def is_yaqub_ring(R: FiniteRing) -> Verdict:
    """Finite subdirect product of copies of Z/3: x^3 = x and characteristic 3."""
    require_nondegenerate(R)
    char = characteristic(R)
    if char != 3:
        return Verdict("yaqub_ring", False, {"characteristic": char}, {"scanned": 0, "domain": R.order})
    v = satisfies_identity(R, "x3_eq_x")
    v.predicate_id = "yaqub_ring"
    return v


def is_iso_z5(R: FiniteRing) -> Verdict:
    require_nondegenerate(R)
    char = characteristic(R)
    holds = R.order == 5 and char == 5
    return Verdict("iso_z5", holds, None if holds else {"order": R.order, "characteristic": char})


# -- registry ---------------------------------------------------------------

PREDICATES: dict[str, Callable[..., Verdict]] = {
    "yaqub_nil_clean": is_yaqub_nil_clean,
    "strongly_nil_clean": is_strongly_nil_clean,
    "strongly_2_nil_clean": is_strongly_2_nil_clean,
    "strongly_weakly_nil_clean": is_strongly_weakly_nil_clean,
    "hirano": is_hirano,
    "two_uu": is_2uu,
    "exchange": is_exchange,
    "clean": is_clean,
    "strongly_clean": is_strongly_clean,
    "periodic": is_periodic,
    "boolean": is_boolean,
    "yaqub_ring": is_yaqub_ring,
    "iso_z5": is_iso_z5,
}

_SCAN_GUARDED = {"exchange", "clean", "strongly_clean"}
_FULL_SCAN = {"yaqub_nil_clean", "strongly_nil_clean", "strongly_2_nil_clean",
              "strongly_weakly_nil_clean", "hirano", "two_uu"}


def evaluate(R: FiniteRing, pid: str, full_scan: bool = False, clean_guard: int = CLEAN_SCAN_MAX) -> Verdict:
    """Run a predicate or identity tag by its stable identifier."""
    if pid in IDENTITY_TAGS:
        return satisfies_identity(R, pid, full_scan)
    fn = PREDICATES[pid]
    if pid in _SCAN_GUARDED:
        return fn(R, guard=clean_guard)
    if pid in _FULL_SCAN:
        return fn(R, full_scan=full_scan)
    return fn(R)
