"""Additive spans, two-sided ideals, quotients, generated subrings and corners."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import NotAnIdeal, NotIdempotent, SizeGuard
from .expr import Corner, Quotient, Subring
from .rings import FiniteRing, QuotientRing, SubsetRing
from .verdict import Verdict

IDEAL_ENUM_MAX = 64


def _as_indices(R: FiniteRing, xs: Iterable) -> np.ndarray:
    if isinstance(xs, np.ndarray):
        return xs.astype(np.int64, copy=False).ravel()
    return np.asarray([R.idx(x) for x in xs], dtype=np.int64)


def cyclic_multiples(R: FiniteRing, g: int) -> np.ndarray:
    """0, g, 2g, ... up to the additive order of g."""
    out = np.asarray([R.zero, g], dtype=np.int64)
    if g == R.zero:
        return out[:1]
    step = R.add(g, g)  # len(out) * g
    while True:
        more = R.add(out, step)
        zero = np.flatnonzero(more == R.zero)
        if zero.size:
            return np.concatenate([out, more[:zero[0]]])
        out = np.concatenate([out, more])
        step = R.add(step, step)


def span_mask(R: FiniteRing, gens, start: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of the additive subgroup generated by ``gens`` (and ``start``)."""
    if start is None:
        mask = np.zeros(R.order, dtype=bool)
        mask[R.zero] = True
    else:
        mask = start.copy()
    members = np.flatnonzero(mask)
    for g in _as_indices(R, gens):
        if mask[g]:
            continue
        mults = cyclic_multiples(R, int(g))
        mask[R.add(members[:, None], mults[None, :]).ravel()] = True
        members = np.flatnonzero(mask)
    return mask


def additive_span(R: FiniteRing, gens) -> np.ndarray:
    return np.flatnonzero(span_mask(R, gens))


def additive_basis(R: FiniteRing, subset) -> np.ndarray:
    """Greedy generators of the additive span of ``subset``, ascending picks."""
    subset = np.sort(_as_indices(R, subset))
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero] = True
    members = np.flatnonzero(mask)
    picks = []
    while True:
        missing = subset[~mask[subset]]
        if missing.size == 0:
            break
        g = int(missing[0])
        picks.append(g)
        mults = cyclic_multiples(R, g)
        mask[R.add(members[:, None], mults[None, :]).ravel()] = True
        members = np.flatnonzero(mask)
    return np.asarray(picks, dtype=np.int64)


@dataclass(frozen=True)
class Ideal:
    ring_id: int
    elements: tuple

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return int(x) in set(self.elements)

    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def mask(self, order: int) -> np.ndarray:
        m = np.zeros(order, dtype=bool)
        m[list(self.elements)] = True
        return m


def _ideal(R: FiniteRing, mask: np.ndarray) -> Ideal:
    return Ideal(R.uid, tuple(int(i) for i in np.flatnonzero(mask)))


def is_ideal(R: FiniteRing, elements) -> bool:
    """Zero, closure under + and -, and absorption of left/right products."""
    elems = np.unique(_as_indices(R, elements))
    if elems.size == 0:
        return False
    mask = np.zeros(R.order, dtype=bool)
    mask[elems] = True
    if not mask[R.zero] or not np.all(mask[R.neg(elems)]):
        return False
    gi = additive_basis(R, elems)
    if gi.size == 0:
        return True
    gr = R.additive_generators()
    return bool(
        np.all(mask[R.add(elems[:, None], gi[None, :])])
        and np.all(mask[R.mul(gr[:, None], gi[None, :])])
        and np.all(mask[R.mul(gi[:, None], gr[None, :])])
    )


def ideal_generated(R: FiniteRing, gens) -> Ideal:
    """Smallest two-sided ideal containing ``gens``: the additive span of r*g*s."""
    gens = _as_indices(R, gens)
    b = R.additive_generators()
    products = [gens]
    for g in gens:
        products.append(R.mul(R.mul(b[:, None], g), b[None, :]).ravel())
    return _ideal(R, span_mask(R, np.unique(np.concatenate(products))))


def ideal_sum(R: FiniteRing, I: Ideal, J: Ideal) -> Ideal:
    start = I.mask(R.order)
    return _ideal(R, span_mask(R, additive_basis(R, J.array()), start=start))


def ideal_intersection(R: FiniteRing, I: Ideal, J: Ideal) -> Ideal:
    return Ideal(R.uid, tuple(sorted(set(I.elements) & set(J.elements))))


def all_ideals(R: FiniteRing, guard: int = IDEAL_ENUM_MAX) -> list[Ideal]:
    """Every two-sided ideal of R, from principal ideals closed under sums.

    Sorted by size, then lexicographically by elements.
    """
    if R.order > guard:
        raise SizeGuard(f"all_ideals: order {R.order} exceeds guard {guard}")
    found: dict[tuple, Ideal] = {}
    for a in range(R.order):
        I = ideal_generated(R, [a])
        found.setdefault(I.elements, I)
    frontier = list(found.values())
    while frontier:
        current = list(found.values())
        fresh = []
        for I in frontier:
            for J in current:
                S = ideal_sum(R, I, J)
                if S.elements not in found:
                    found[S.elements] = S
                    fresh.append(S)
        frontier = fresh
    return sorted(found.values(), key=lambda I: (len(I), I.elements))


def quotient(R: FiniteRing, ideal, expr=None) -> QuotientRing:
    """R/I with cosets represented by their smallest element index."""
    elems = ideal.array() if isinstance(ideal, Ideal) else np.unique(_as_indices(R, ideal))
    if isinstance(ideal, Ideal) and ideal.ring_id != R.uid:
        raise NotAnIdeal("ideal belongs to a different ring")
    if not is_ideal(R, elems):
        raise NotAnIdeal(f"{sorted(int(e) for e in elems)} is not an ideal of {R.label}")
    if expr is None and R.expr is not None:
        expr = Quotient(R.expr, tuple(int(g) for g in additive_basis(R, elems)) or (0,))
    label = str(expr) if expr is not None else f"{R.label} / I"
    return QuotientRing(R, elems, label, expr)


def subring_closure(R: FiniteRing, gens, include_one: bool = True) -> np.ndarray:
    """Carrier (parent indices, ascending) of the subring generated by ``gens``."""
    seed = list(_as_indices(R, gens))
    if include_one:
        seed.append(R.one)
    mask = span_mask(R, seed)
    while True:
        basis = additive_basis(R, np.flatnonzero(mask))
        if basis.size == 0:
            break
        prods = R.mul(basis[:, None], basis[None, :]).ravel()
        new = np.unique(prods[~mask[prods]])
        if new.size == 0:
            break
        mask = span_mask(R, new, start=mask)
    return np.flatnonzero(mask)


def _find_identity(R: FiniteRing, carrier: np.ndarray) -> int | None:
    basis = additive_basis(R, carrier)
    if basis.size == 0:
        return None
    for e in carrier:
        if np.all(R.mul(e, basis) == basis) and np.all(R.mul(basis, e) == basis):
            return int(e)
    return None


def generated_subring(R: FiniteRing, gens, include_one: bool = True, expr=None) -> SubsetRing:
    """Smallest subring containing ``gens`` (and 1 when ``include_one``).

    With ``include_one`` this is Z[gens] and shares R's identity; otherwise the
    result's identity is its own (if any), and ``one`` is None when it has none.
    """
    gens = _as_indices(R, gens)
    carrier = subring_closure(R, gens, include_one)
    one = R.one if include_one else _find_identity(R, carrier)
    if expr is None and include_one and R.expr is not None:
        expr = Subring(R.expr, tuple(int(g) for g in gens))
    label = str(expr) if expr is not None else f"<{', '.join(R.format(g) for g in gens)}> in {R.label}"
    return SubsetRing(R, carrier, one, label, expr)


def corner(R: FiniteRing, e, expr=None) -> SubsetRing:
    """The corner ring eRe, whose identity is e."""
    e = R.idx(e)
    if R.mul(e, e) != e:
        raise NotIdempotent(f"{R.format(e)} is not idempotent in {R.label}")
    carrier = np.unique(R.mul(R.mul(e, R.elements()), e))
    if expr is None and R.expr is not None:
        expr = Corner(R.expr, e)
    label = str(expr) if expr is not None else f"corner({R.label}; {e})"
    return SubsetRing(R, carrier, e, label, expr)


def central_idempotents(R: FiniteRing) -> np.ndarray:
    x = R.elements()
    idem = x[R.mul(x, x) == x]
    gens = R.additive_generators()
    central = [int(e) for e in idem
               if np.array_equal(R.mul(e, gens), R.mul(gens, e))]
    return np.asarray(central, dtype=np.int64)


def has_central_split(R: FiniteRing, left_pred: Callable, right_pred: Callable,
                      allow_degenerate: bool = False) -> Verdict:
    """Search central idempotents e with eRe |= left_pred and (1-e)R(1-e) |= right_pred.

    An order-1 factor satisfies no predicate unless ``allow_degenerate`` is
    set, in which case it is accepted vacuously.
    """
    cands = central_idempotents(R)

    def ok(S: FiniteRing, pred) -> bool:
        if S.order < 2:
            return allow_degenerate
        return bool(pred(S))

    for e in cands:
        f = R.sub(R.one, int(e))
        if ok(corner(R, int(e)), left_pred) and ok(corner(R, f), right_pred):
            return Verdict("central_split", True, {"e": int(e), "complement": int(f)},
                           {"central_idempotents": int(cands.size)})
    return Verdict("central_split", False, {"central_idempotents": [int(e) for e in cands]},
                   {"central_idempotents": int(cands.size)})
