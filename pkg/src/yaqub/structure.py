"""Constructive structure results: prime-component splitting, the two
classification routes, tripotent witness extraction and homomorphic images."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .elements import jacobson_radical, nilpotency, nilpotent_mask, special_elements, unit_inverse
from .errors import ClassificationContradiction, PreconditionFailed, SizeGuard, WitnessNotFound
from .ideals import IDEAL_ENUM_MAX, all_ideals, central_idempotents, corner, has_central_split, quotient, span_mask
from .predicates import is_boolean, is_iso_z5, is_yaqub_nil_clean, is_yaqub_ring, require_nondegenerate
from .rings import FiniteRing, characteristic
from .verdict import Verdict

CASE_TAGS = ("R1", "R2", "R3", "R1xR2", "R1xR3", "NotYaqubNilClean")


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


# -- CRT splitting ----------------------------------------------------------


@dataclass
class Component:
    prime: int
    exponent: int
    idempotent: int  # central idempotent of the parent ring
    ring: FiniteRing


@dataclass
class Decomposition:
    ring: FiniteRing
    factors: list[Component]

    @property
    def idempotents(self) -> list[int]:
        return [c.idempotent for c in self.factors]

    def certificate_holds(self) -> bool:
        """Idempotents are central, pairwise orthogonal, sum to 1, and the
        factor orders multiply to |R|."""
        R = self.ring
        gens = R.additive_generators()
        total = R.zero
        for i, c in enumerate(self.factors):
            e = c.idempotent
            if R.mul(e, e) != e or not np.array_equal(R.mul(e, gens), R.mul(gens, e)):
                return False
            for d in self.factors[i + 1:]:
                if R.mul(e, d.idempotent) != R.zero or R.mul(d.idempotent, e) != R.zero:
                    return False
            total = R.add(total, e)
        sizes = int(np.prod([c.ring.order for c in self.factors])) if self.factors else 1
        return total == R.one and sizes == R.order


def prime_component_decomposition(R: FiniteRing) -> Decomposition:
    """Split R along the prime-power factors of its characteristic.

    For char c = prod p_i^k_i the idempotent for p_i is y_i * (c / p_i^k_i) * 1
    where y_i inverts c / p_i^k_i modulo p_i^k_i.
    """
    require_nondegenerate(R)
    c = characteristic(R)
    parts = factorize(c)
    if len(parts) == 1:
        p, k = parts[0]
        return Decomposition(R, [Component(p, k, R.one, R)])
    comps = []
    for p, k in parts:
        q = p ** k
        m = c // q
        eps = R.from_int(pow(m, -1, q) * m % c)
        comps.append(Component(p, k, eps, corner(R, eps)))
    dec = Decomposition(R, comps)
    if not dec.certificate_holds():
        raise RuntimeError(f"CRT idempotents of {R.label} fail their certificate")
    return dec


# -- classification ---------------------------------------------------------


@dataclass
class ClassificationOutcome:
    case_tag: str
    factor_evidence: list[dict[str, Any]] = field(default_factory=list)
    witness: dict[str, Any] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"case": self.case_tag, "factors": self.factor_evidence}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


_RESIDUE_TEST = {2: ("boolean", is_boolean), 3: ("yaqub_ring", is_yaqub_ring), 5: ("iso_z5", is_iso_z5)}


def _residue(R: FiniteRing):
    J = jacobson_radical(R)
    return J, quotient(R, J.array())


def structure_by_components(R: FiniteRing) -> tuple[bool, str | None, list[dict[str, Any]]]:
    """Whether R splits as R1, R2, R3, R1 x R2 or R1 x R3 with nil radicals and
    residue rings Boolean / Yaqub / Z5 respectively, evaluated from the
    characteristic splitting alone."""
    dec = prime_component_decomposition(R)
    primes = [c.prime for c in dec.factors]
    evidence = []
    ok = set(primes) <= {2, 3, 5} and not {3, 5} <= set(primes)
    for comp in dec.factors:
        J, S = _residue(comp.ring)
        entry: dict[str, Any] = {
            "prime": comp.prime, "exponent": comp.exponent, "idempotent": comp.idempotent,
            "order": comp.ring.order, "radical": list(J.elements), "radical_is_nil": J.is_nil,
            "residue": S.label, "residue_order": S.order,
        }
        if comp.prime in _RESIDUE_TEST and S.order >= 2:
            name, test = _RESIDUE_TEST[comp.prime]
            verdict = test(S)
            entry[name] = verdict.holds
            ok = ok and verdict.holds and J.is_nil
        else:
            ok = False
        evidence.append(entry)
    if not ok:
        return False, None, evidence
    tag = {(2,): "R1", (3,): "R2", (5,): "R3", (2, 3): "R1xR2", (2, 5): "R1xR3"}[tuple(sorted(primes))]
    return True, tag, evidence


def classify_theorem_3_1(R: FiniteRing) -> ClassificationOutcome:
    """Case of R among R1, R2, R3, R1xR2, R1xR3 (prime-component route)."""
    ync = is_yaqub_nil_clean(R)
    holds, tag, evidence = structure_by_components(R)
    if not ync.holds:
        if holds:
            raise ClassificationContradiction(f"{R.label} fits case {tag} but is not Yaqub nil-clean")
        return ClassificationOutcome("NotYaqubNilClean", evidence, ync.witness)
    primes = {e["prime"] for e in evidence}
    if {3, 5} <= primes:
        raise ClassificationContradiction(f"{R.label}: 3- and 5-components co-occur")
    if not holds:
        raise ClassificationContradiction(f"Yaqub nil-clean ring {R.label} matches no case")
    return ClassificationOutcome(tag, evidence)


def residue_form(R: FiniteRing) -> tuple[bool, str | None, dict[str, Any]]:
    """Whether J(R) is nil and R/J(R) is Boolean, Yaqub, Z5, Boolean x Yaqub
    or Boolean x Z5 (pure forms first, then central splittings)."""
    J, S = _residue(R)
    evidence: dict[str, Any] = {"radical": list(J.elements), "radical_is_nil": J.is_nil,
                                "residue": S.label, "residue_order": S.order}
    if not J.is_nil or S.order < 2:
        return False, None, evidence
    for tag, test in (("R1", is_boolean), ("R2", is_yaqub_ring), ("R3", is_iso_z5)):
        if test(S).holds:
            return True, tag, evidence
    for tag, right in (("R1xR2", is_yaqub_ring), ("R1xR3", is_iso_z5)):
        split = has_central_split(S, is_boolean, right)
        if split.holds:
            evidence["split_idempotent"] = split.witness["e"]
            return True, tag, evidence
    return False, None, evidence


def classify_theorem_3_6(R: FiniteRing) -> ClassificationOutcome:
    """Case of R read off R/J(R); must agree with :func:`classify_theorem_3_1`."""
    holds, tag, evidence = residue_form(R)
    by_components = classify_theorem_3_1(R)
    mine = tag if holds else "NotYaqubNilClean"
    if mine != by_components.case_tag:
        raise ClassificationContradiction(
            f"{R.label}: residue route gives {mine}, component route gives {by_components.case_tag}")
    return ClassificationOutcome(mine, [evidence], by_components.witness)


# -- tripotent witnesses ----------------------------------------------------


@dataclass(frozen=True)
class TripotentWitness:
    a: int
    e: int
    mode: str  # "minus": a - e nilpotent; "plus3": a + 3e nilpotent
    nil_index: int
    source: str = "Z[a]"

    def to_json(self) -> dict[str, Any]:
        return {"a": self.a, "e": self.e, "mode": self.mode, "nil_index": self.nil_index,
                "source": self.source}


def _three(R: FiniteRing, e):
    return R.add(e, R.add(e, e))


def _pick_tripotent(R: FiniteRing, a: int, cands: np.ndarray) -> tuple[int, str] | None:
    if cands.size == 0:
        return None
    minus = cands[nilpotent_mask(R, R.sub(a, cands))]
    if minus.size:
        return int(minus[0]), "minus"
    plus = cands[nilpotent_mask(R, R.add(a, _three(R, cands)))]
    if plus.size:
        return int(plus[0]), "plus3"
    return None


def zx_carrier(R: FiniteRing, a) -> np.ndarray:
    """Elements of Z[a], the unital subring generated by a: the additive span
    of 1 and the powers of a.  Once a^k lies in the span of lower powers the
    span is closed under multiplication by a, so the loop can stop there."""
    a = R.idx(a)
    mask = span_mask(R, [R.one])
    x = a
    while not mask[x]:
        mask = span_mask(R, [x], start=mask)
        x = R.mul(x, a)
    return np.flatnonzero(mask)


def extract_tripotent(R: FiniteRing, a) -> TripotentWitness:
    """Tripotent e commuting with a such that a - e or a + 3e is nilpotent.

    Searched inside Z[a] first (where commuting is automatic); a full-ring
    scan over commuting tripotents is the fallback.  ``minus`` is preferred,
    then the smallest e.
    """
    a = R.idx(a)
    a3 = R.pow(a, 3)
    if not (nilpotent_mask(R, np.asarray([R.sub(a, a3), R.add(a, a3)])).any()):
        raise PreconditionFailed(f"neither a - a^3 nor a + a^3 is nilpotent for a = {R.format(a)}")
    trip = special_elements(R).tripotent
    zx = zx_carrier(R, a)
    found = _pick_tripotent(R, a, zx[trip[zx]])
    source = "Z[a]"
    if found is None:
        allt = np.flatnonzero(trip)
        found = _pick_tripotent(R, a, allt[R.mul(a, allt) == R.mul(allt, a)])
        source = "R"
    if found is None:
        raise WitnessNotFound(f"no tripotent witness for {R.format(a)} in {R.label}")
    e, mode = found
    target = R.sub(a, e) if mode == "minus" else R.add(a, _three(R, e))
    return TripotentWitness(a, e, mode, nilpotency(R, target).index, source)


def verify_tripotent_witness(R: FiniteRing, w: TripotentWitness) -> bool:
    e, a = w.e, w.a
    if R.pow(e, 3) != e or R.mul(a, e) != R.mul(e, a):
        return False
    target = R.sub(a, e) if w.mode == "minus" else R.add(a, _three(R, e))
    return nilpotency(R, target).index == w.nil_index


def _check_five_nilpotent_and_plus(R: FiniteRing, a: int) -> None:
    if not nilpotency(R, R.from_int(5)).is_nilpotent:
        raise PreconditionFailed(f"5 is not nilpotent in {R.label}")
    if not nilpotency(R, R.add(a, R.pow(a, 3))).is_nilpotent:
        raise PreconditionFailed(f"a + a^3 is not nilpotent for a = {R.format(a)}")


@dataclass(frozen=True)
class QuarticWitness:
    """e in Z[a] with e^3 = 4e and a - e nilpotent."""

    a: int
    e: int
    w: int  # a - e
    nil_index: int


def extract_lemma_3_8(R: FiniteRing, a) -> QuarticWitness:
    """For 5 nilpotent and a + a^3 nilpotent: e in Z[a], e^3 = 4e, a - e nilpotent."""
    a = R.idx(a)
    _check_five_nilpotent_and_plus(R, a)
    zx = zx_carrier(R, a)
    quartic = zx[R.pow(zx, 3) == R.times(4, zx)]
    good = quartic[nilpotent_mask(R, R.sub(a, quartic))] if quartic.size else quartic
    if good.size == 0:
        raise WitnessNotFound(f"no e with e^3 = 4e and a - e nilpotent in Z[{R.format(a)}]")
    e = int(good[0])
    w = R.sub(a, e)
    return QuarticWitness(a, e, w, nilpotency(R, w).index)


def lemma_3_8_converse(R: FiniteRing, a: int, e: int) -> bool:
    """Rebuild a + a^3 as 5e + (1 + 3e^2 + 3ew + w^2) w with w = a - e and
    check it equals a + a^3 and is nilpotent."""
    if R.pow(e, 3) != R.times(4, e) or R.mul(a, e) != R.mul(e, a):
        return False
    w = R.sub(a, e)
    if not nilpotency(R, w).is_nilpotent:
        return False
    e2 = R.mul(e, e)
    inner = R.add(R.add(R.add(R.one, R.times(3, e2)), R.times(3, R.mul(e, w))), R.mul(w, w))
    rebuilt = R.add(R.times(5, e), R.mul(inner, w))
    return rebuilt == R.add(a, R.pow(a, 3)) and nilpotency(R, rebuilt).is_nilpotent


def extract_lemma_3_9(R: FiniteRing, a) -> TripotentWitness:
    """For 5 nilpotent and a + a^3 nilpotent: tripotent e = f/2 with a + 3e nilpotent,
    where f is the quartic witness."""
    a = R.idx(a)
    f = extract_lemma_3_8(R, a).e
    half = unit_inverse(R, R.from_int(2))
    if half is None:
        raise PreconditionFailed(f"2 is not a unit in {R.label}")
    e = R.mul(half, f)
    target = R.add(a, _three(R, e))
    res = nilpotency(R, target)
    if R.pow(e, 3) != e or not res.is_nilpotent:
        raise WitnessNotFound(f"halving the quartic witness failed for {R.format(a)}")
    return TripotentWitness(a, e, "plus3", res.index, "Z[a]")


def lemma_3_9_converse(R: FiniteRing, a: int, e: int) -> bool:
    """Rebuild a + a^3 as -30e + (1 + w^2 - 9ew + 27e^2) w with w = a + 3e."""
    if R.pow(e, 3) != e or R.mul(a, e) != R.mul(e, a):
        return False
    w = R.add(a, _three(R, e))
    if not nilpotency(R, w).is_nilpotent:
        return False
    inner = R.add(R.add(R.add(R.one, R.mul(w, w)), R.times(-9, R.mul(e, w))), R.times(27, R.mul(e, e)))
    rebuilt = R.add(R.times(-30, e), R.mul(inner, w))
    return rebuilt == R.add(a, R.pow(a, 3)) and nilpotency(R, rebuilt).is_nilpotent


# -- homomorphic images -----------------------------------------------------

HOM_TARGETS = ("Z3xZ5", "Z5xZ5")


def hom_image_detect(R: FiniteRing, target: str, guard: int = IDEAL_ENUM_MAX) -> Verdict:
    """Whether R maps onto Z3 x Z5 or Z5 x Z5, by scanning quotients by all ideals."""
    if target not in HOM_TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {HOM_TARGETS}")
    if R.order > guard:
        raise SizeGuard(f"hom_image_detect: order {R.order} exceeds ideal guard {guard}")
    pid = f"hom_image_{target}"
    ideals = all_ideals(R, guard)
    index = 15 if target == "Z3xZ5" else 25
    for I in ideals:
        if R.order != index * len(I):
            continue
        if target == "Z3xZ5":
            # any unital ring of order 15 is Z/15
            return Verdict(pid, True, {"ideal": list(I.elements)}, {"ideals": len(ideals)})
        Q = quotient(R, I)
        for e in central_idempotents(Q):
            e = int(e)
            if e in (Q.zero, Q.one):
                continue
            A, B = corner(Q, e), corner(Q, Q.sub(Q.one, e))
            if all(S.order == 5 and characteristic(S) == 5 for S in (A, B)):
                return Verdict(pid, True, {"ideal": list(I.elements), "idempotent": e},
                               {"ideals": len(ideals)})
    return Verdict(pid, False, {"ideal_orders": sorted({len(I) for I in ideals})}, {"ideals": len(ideals)})
