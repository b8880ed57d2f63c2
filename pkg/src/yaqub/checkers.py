"""Independent re-verification of witnesses.

Deliberately naive: scalar loops over ``R.add``/``R.mul`` only, nilpotency by
multiplying up to ``order`` times, units by scanning for an inverse.  Nothing
here calls into :mod:`yaqub.elements` or :mod:`yaqub.predicates`.
"""

from __future__ import annotations

from .rings import FiniteRing


def nilpotent(R: FiniteRing, x: int) -> bool:
    y = x
    for _ in range(R.order + 1):
        if y == R.zero:
            return True
        y = R.mul(y, x)
    return False


def power(R: FiniteRing, x: int, k: int) -> int:
    y = R.one
    for _ in range(k):
        y = R.mul(y, x)
    return y


def minus(R: FiniteRing, x: int, y: int) -> int:
    return R.add(x, R.neg(y))


def is_unit(R: FiniteRing, u: int) -> bool:
    return any(R.mul(u, b) == R.one and R.mul(b, u) == R.one for b in range(R.order))


def is_idempotent(R: FiniteRing, e: int) -> bool:
    return R.mul(e, e) == e


def characteristic(R: FiniteRing) -> int:
    c, x = 1, R.one
    while x != R.zero:
        x = R.add(x, R.one)
        c += 1
    return c


# -- counterexample checks: True means "x really refutes the class" ----------


def refutes_yaqub_nil_clean(R: FiniteRing, a: int) -> bool:
    a3 = power(R, a, 3)
    return not nilpotent(R, minus(R, a, a3)) and not nilpotent(R, R.add(a, a3))


def refutes_strongly_nil_clean(R: FiniteRing, a: int) -> bool:
    return not nilpotent(R, minus(R, a, power(R, a, 2)))


def refutes_strongly_2_nil_clean(R: FiniteRing, a: int) -> bool:
    return not nilpotent(R, minus(R, a, power(R, a, 3)))


def refutes_strongly_weakly_nil_clean(R: FiniteRing, a: int) -> bool:
    a2 = power(R, a, 2)
    return not nilpotent(R, minus(R, a, a2)) and not nilpotent(R, R.add(a, a2))


def refutes_hirano(R: FiniteRing, u: int) -> bool:
    u2 = power(R, u, 2)
    return (is_unit(R, u) and not nilpotent(R, minus(R, R.one, u2))
            and not nilpotent(R, R.add(R.one, u2)))


def refutes_2uu(R: FiniteRing, u: int) -> bool:
    return is_unit(R, u) and not nilpotent(R, minus(R, R.one, power(R, u, 2)))


def _principal_right(R: FiniteRing, a: int) -> set[int]:
    return {R.mul(a, r) for r in range(R.order)}


def refutes_exchange(R: FiniteRing, a: int) -> bool:
    aR = _principal_right(R, a)
    bR = _principal_right(R, minus(R, R.one, a))
    return not any(is_idempotent(R, e) and e in aR and minus(R, R.one, e) in bR
                   for e in range(R.order))


def refutes_clean(R: FiniteRing, a: int, strong: bool = False) -> bool:
    for e in range(R.order):
        if not is_idempotent(R, e):
            continue
        if strong and R.mul(e, a) != R.mul(a, e):
            continue
        if is_unit(R, minus(R, a, e)):
            return False
    return True


def refutes_identity(R: FiniteRing, tag: str, a: int) -> bool:
    if tag == "x2_eq_x":
        return power(R, a, 2) != a
    if tag == "x3_eq_x":
        return power(R, a, 3) != a
    if tag == "x3_eq_pm_x":
        return power(R, a, 3) not in (a, R.neg(a))
    if tag == "x5_eq_x":
        return power(R, a, 5) != a
    if tag == "a_minus_a5_nil":
        return not nilpotent(R, minus(R, a, power(R, a, 5)))
    raise ValueError(tag)


def recheck(R: FiniteRing, verdict) -> bool:
    """True iff a failed verdict's witness independently refutes the predicate."""
    if verdict.holds:
        raise ValueError("only failed verdicts carry counterexamples")
    w = verdict.witness or {}
    pid = verdict.predicate_id
    if pid == "yaqub_nil_clean":
        return refutes_yaqub_nil_clean(R, w["a"])
    if pid == "strongly_nil_clean":
        return refutes_strongly_nil_clean(R, w["a"])
    if pid == "strongly_2_nil_clean":
        return refutes_strongly_2_nil_clean(R, w["a"])
    if pid == "strongly_weakly_nil_clean":
        return refutes_strongly_weakly_nil_clean(R, w["a"])
    if pid == "hirano":
        return refutes_hirano(R, w["u"])
    if pid == "two_uu":
        return refutes_2uu(R, w["u"])
    if pid == "exchange":
        return refutes_exchange(R, w["a"])
    if pid in ("clean", "strongly_clean"):
        return refutes_clean(R, w["a"], strong=pid == "strongly_clean")
    if pid == "boolean":
        return refutes_identity(R, "x2_eq_x", w["a"])
    if pid == "yaqub_ring":
        if "characteristic" in w:
            return characteristic(R) != 3
        return refutes_identity(R, "x3_eq_x", w["a"])
    if pid == "iso_z5":
        return not (R.order == 5 and characteristic(R) == 5)
    if pid in ("x2_eq_x", "x3_eq_x", "x3_eq_pm_x", "x5_eq_x", "a_minus_a5_nil"):
        return refutes_identity(R, pid, w["a"])
    raise ValueError(f"no independent checker for {pid!r}")


# -- positive witnesses -----------------------------------------------------


def confirms_tripotent_witness(R: FiniteRing, a: int, e: int, mode: str) -> bool:
    if power(R, e, 3) != e or R.mul(a, e) != R.mul(e, a):
        return False
    if mode == "minus":
        return nilpotent(R, minus(R, a, e))
    if mode == "plus3":
        return nilpotent(R, R.add(a, R.add(e, R.add(e, e))))
    raise ValueError(mode)


def confirms_exchange_witness(R: FiniteRing, a: int, e: int) -> bool:
    return (is_idempotent(R, e) and e in _principal_right(R, a)
            and minus(R, R.one, e) in _principal_right(R, minus(R, R.one, a)))


def confirms_clean_witness(R: FiniteRing, a: int, e: int, strong: bool = False) -> bool:
    if not is_idempotent(R, e) or not is_unit(R, minus(R, a, e)):
        return False
    return not strong or R.mul(e, a) == R.mul(a, e)
