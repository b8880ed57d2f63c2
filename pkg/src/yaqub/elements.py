"""Per-element structure: nilpotents, units, idempotents, tripotents, J(R)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ideals import additive_basis, central_idempotents, is_ideal, span_mask
from .rings import FiniteRing

_CHUNK = 1 << 20


@dataclass(frozen=True)
class NilpotencyResult:
    is_nilpotent: bool
    index: int | None
    trail: tuple  # a, a^2, ... up to the first zero or repeated power

    def __bool__(self) -> bool:
        return self.is_nilpotent


def power_trail(R: FiniteRing, a) -> tuple[list[int], int | None]:
    """Powers a, a^2, ... stopping at 0 or at the first repeat.

    Returns the trail and, on a repeat, the 1-based exponent m whose value
    the last power repeats (so the first collision is a^m = a^len(trail)).
    """
    a = R.idx(a)
    seen: dict[int, int] = {}
    trail = []
    x, k = a, 1
    while True:
        trail.append(x)
        if x == R.zero:
            return trail, seen.get(x)
        if x in seen:
            return trail, seen[x]
        seen[x] = k
        x = R.mul(x, a)
        k += 1


def nilpotency(R: FiniteRing, a) -> NilpotencyResult:
    """Nilpotency index of ``a`` by power-cycle detection.

    Once a power repeats before reaching 0 the sequence is periodic and can
    never hit 0.
    """
    trail, _ = power_trail(R, a)
    if trail[-1] == R.zero:
        first = trail.index(R.zero)
        return NilpotencyResult(True, first + 1, tuple(trail[:first + 1]))
    return NilpotencyResult(False, None, tuple(trail))


def _squarings_for(order: int) -> int:
    # a nilpotent a has a^k R strictly decreasing, so its index k <= log2|R|
    bound = max(1, order.bit_length() - 1)
    m = 0
    while (1 << m) < bound:
        m += 1
    return m


def nilpotent_mask(R: FiniteRing, xs) -> np.ndarray:
    """Vectorised nilpotency test for an array of elements."""
    y = np.asarray(xs, dtype=np.int64)
    for _ in range(_squarings_for(R.order)):
        y = R.mul(y, y)
    return y == R.zero


def is_nilpotent(R: FiniteRing, a) -> bool:
    return bool(nilpotent_mask(R, np.asarray([R.idx(a)]))[0])


def idempotent_power(R: FiniteRing, xs) -> np.ndarray:
    """For each x, the unique idempotent among its powers."""
    y = np.asarray(xs, dtype=np.int64)
    for _ in range(_squarings_for(R.order)):
        y = R.mul(y, y)
    j = 2
    while True:
        sq = R.mul(y, y)
        if np.array_equal(sq, y):
            return y
        y = R.pow(y, j)
        j += 1


def unit_inverse(R: FiniteRing, a) -> int | None:
    """Two-sided inverse of ``a`` or None."""
    a = R.idx(a)
    hits = np.flatnonzero(R.mul(a, R.elements()) == R.one)
    if hits.size == 0:
        return None
    b = int(hits[0])
    # a one-sided inverse is two-sided in a finite ring
    if R.mul(b, a) != R.one:
        raise RuntimeError(f"right inverse of {R.format(a)} is not a left inverse in {R.label}")
    return b


def unit_mask(R: FiniteRing) -> np.ndarray:
    tables = R.tables()
    if tables is not None:
        return (tables[1] == R.one).any(axis=1)
    return idempotent_power(R, R.elements()) == R.one


@dataclass(frozen=True)
class SpecialElements:
    """Boolean masks over the carrier."""

    nilpotent: np.ndarray
    unit: np.ndarray
    idempotent: np.ndarray
    tripotent: np.ndarray
    central_idempotent: np.ndarray

    @staticmethod
    def indices(mask: np.ndarray) -> list[int]:
        return [int(i) for i in np.flatnonzero(mask)]

    @property
    def nilpotents(self) -> list[int]:
        return self.indices(self.nilpotent)

    @property
    def units(self) -> list[int]:
        return self.indices(self.unit)

    @property
    def idempotents(self) -> list[int]:
        return self.indices(self.idempotent)

    @property
    def tripotents(self) -> list[int]:
        return self.indices(self.tripotent)

    @property
    def central_idempotents(self) -> list[int]:
        return self.indices(self.central_idempotent)


def special_elements(R: FiniteRing) -> SpecialElements:
    if "special" not in R._cache:
        x = R.elements()
        sq = R.mul(x, x)
        central = np.zeros(R.order, dtype=bool)
        central[central_idempotents(R)] = True
        R._cache["special"] = SpecialElements(
            nilpotent=nilpotent_mask(R, x),
            unit=unit_mask(R),
            idempotent=sq == x,
            tripotent=R.mul(sq, x) == x,
            central_idempotent=central,
        )
    return R._cache["special"]


@dataclass(frozen=True)
class RadicalResult:
    elements: tuple
    is_nil: bool
    nilpotency_exponent: int | None

    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def mask(self, order: int) -> np.ndarray:
        m = np.zeros(order, dtype=bool)
        m[list(self.elements)] = True
        return m


def _quasi_regular(R: FiniteRing, cand: np.ndarray, units: np.ndarray, left: bool) -> np.ndarray:
    rs = np.concatenate([[R.one], np.delete(R.elements(), R.one)])
    pos = 0
    while pos < rs.size and cand.size:
        step = max(1, _CHUNK // cand.size)
        chunk = rs[pos:pos + step]
        prod = R.mul(chunk[:, None], cand[None, :]) if left else R.mul(cand[None, :], chunk[:, None])
        cand = cand[units[R.sub(R.one, prod)].all(axis=0)]
        pos += step
    return cand


def ideal_power_exponent(R: FiniteRing, elems: np.ndarray) -> int | None:
    """Smallest m with every product of m elements of the ideal equal to 0."""
    basis = additive_basis(R, elems)
    current = basis
    m = 1
    while current.size:
        if m > R.order:
            return None
        prods = R.mul(current[:, None], basis[None, :]).ravel()
        current = additive_basis(R, np.flatnonzero(span_mask(R, prods)))
        m += 1
    return m


def quasi_regular_radical(R: FiniteRing) -> np.ndarray:
    """{a : 1 - r a is a unit for every r}, by direct scan over all a and r."""
    units = special_elements(R).unit
    return _quasi_regular(R, R.elements(), units, left=True)


def jacobson_radical(R: FiniteRing) -> RadicalResult:
    """J(R) = {a : 1 - r a is a unit for every r}."""
    if "radical" in R._cache:
        return R._cache["radical"]
    special = special_elements(R)
    # J of a finite ring is nil, so only nilpotents can qualify
    cand = np.flatnonzero(special.nilpotent)
    if R.is_commutative():
        J = cand  # commutative: J is the nilradical
    else:
        J = _quasi_regular(R, cand, special.unit, left=True)
        # the left test suffices in a finite ring; confirm right quasi-regularity too
        if _quasi_regular(R, J, special.unit, left=False).size != J.size:
            raise RuntimeError(f"left/right quasi-regular sets differ in {R.label}")
    if not is_ideal(R, J):
        raise RuntimeError(f"quasi-regular set of {R.label} is not an ideal")
    result = RadicalResult(
        elements=tuple(int(j) for j in J),
        is_nil=bool(np.all(nilpotent_mask(R, J))),
        nilpotency_exponent=ideal_power_exponent(R, J),
    )
    R._cache["radical"] = result
    return result
