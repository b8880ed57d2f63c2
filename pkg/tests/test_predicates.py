import pytest

from yaqub import checkers
from yaqub.errors import DegenerateRing, SizeGuard
from yaqub.predicates import (
    IDENTITY_TAGS, PREDICATE_IDS, clean_decomposition, collision_pairs, evaluate, exchange_witnesses,
    is_2uu, is_boolean, is_clean, is_exchange, is_hirano, is_iso_z5, is_periodic, is_strongly_2_nil_clean,
    is_strongly_clean, is_strongly_nil_clean, is_strongly_weakly_nil_clean, is_yaqub_nil_clean, is_yaqub_ring,
    periodic_exponents, satisfies_identity, squares_strongly_weakly_nil_clean,
)
from yaqub.rings import build


def lit(R, text):
    from yaqub.expr import parse_ring_expr
    return R.encode(parse_ring_expr(f"sub(Z/2; {text})").gens[0])


def test_yaqub_nil_clean_examples():
    assert is_yaqub_nil_clean(build("Z/5")).holds
    assert is_yaqub_nil_clean(build("Z/10")).holds
    v = is_yaqub_nil_clean(build("Z/15"))
    assert not v.holds and checkers.refutes_yaqub_nil_clean(build("Z/15"), v.witness["a"])
    assert v.witness["a"] == 2  # smallest offender


def test_nil_clean_family_examples():
    assert is_strongly_nil_clean(build("Z/2")).holds
    assert is_strongly_2_nil_clean(build("Z/6")).holds
    v = is_strongly_2_nil_clean(build("Z/5"))
    assert not v.holds and v.witness["a"] == 2
    assert is_strongly_weakly_nil_clean(build("Z/3")).holds
    assert not is_strongly_weakly_nil_clean(build("Z/5")).holds


def test_hirano_examples():
    P = build("Z/5 x Z/5")
    v = is_hirano(P)
    assert not v.holds and P.value(v.witness["u"]) == (1, 2)
    assert checkers.refutes_hirano(P, lit(P, "(1, 2)"))
    M = build("M2(Z/2)")
    v = is_hirano(M)
    assert not v.holds and M.value(v.witness["u"]) == [[0, 1], [1, 1]]
    assert checkers.refutes_hirano(M, lit(M, "[[0,1],[1,1]]"))
    assert is_hirano(build("Z/5")).holds


def test_2uu_examples():
    assert is_2uu(build("Z/3")).holds and is_2uu(build("Z/2")).holds
    v = is_2uu(build("Z/5"))
    assert not v.holds and v.witness["u"] == 2


def test_exchange_and_clean_examples():
    Z4 = build("Z/4")
    assert exchange_witnesses(Z4)[2] == 0
    assert checkers.confirms_exchange_witness(Z4, 2, 0)
    assert is_exchange(build("Z/7")).holds
    assert clean_decomposition(build("Z/2"), 0) == (1, 1)
    assert clean_decomposition(Z4, 2, strong=True) == (1, 1)
    assert is_clean(build("M2(Z/2)")).holds


def test_exchange_clean_witnesses_reverify(small_ring):
    R = small_ring
    v = is_exchange(R)
    assert v.holds
    for a, e in enumerate(v.witness["idempotent_for"]):
        assert checkers.confirms_exchange_witness(R, a, e)
    c = is_strongly_clean(R)
    if c.holds:
        for a, e in enumerate(c.witness["idempotent_for"]):
            assert checkers.confirms_clean_witness(R, a, e, strong=True)
    assert is_clean(R).holds  # finite rings are clean


def test_scan_guard():
    with pytest.raises(SizeGuard):
        is_exchange(build("Z/2000"))
    assert is_exchange(build("Z/2000"), guard=2000).holds


def test_periodic():
    assert periodic_exponents(build("Z/4"), 2) == (2, 3)
    assert periodic_exponents(build("Z/9"), 1) == (1, 2)
    assert periodic_exponents(build("Z/5"), 2) == (1, 5)
    assert periodic_exponents(build("Z/5"), 0) == (1, 2)


def test_collision_pairs_match_power_trails(small_ring):
    R = small_ring
    m, n = collision_pairs(R, R.elements())
    assert [(int(a), int(b)) for a, b in zip(m, n)] == [periodic_exponents(R, a) for a in range(R.order)]
    for a in range(R.order):
        assert R.pow(a, int(m[a])) == R.pow(a, int(n[a]))
    assert is_periodic(R).holds


def test_identities():
    assert satisfies_identity(build("Z/5"), "x3_eq_pm_x").holds
    v = satisfies_identity(build("Z/7"), "x3_eq_pm_x")
    assert not v.holds and v.witness["a"] == 2
    assert satisfies_identity(build("Z/30"), "a_minus_a5_nil").holds
    assert satisfies_identity(build("Z/30"), "x5_eq_x").holds
    with pytest.raises(ValueError):
        satisfies_identity(build("Z/5"), "x7_eq_x")


def test_boolean_yaqub_z5():
    assert is_yaqub_ring(build("Z/3")).holds
    assert is_yaqub_ring(build("Z/3 x Z/3")).holds
    assert not is_yaqub_ring(build("Z/9")).holds
    assert not is_yaqub_ring(build("Z/2")).holds
    assert is_boolean(build("Z/2 x Z/2")).holds and not is_boolean(build("Z/4")).holds
    assert is_iso_z5(build("Z/5")).holds and not is_iso_z5(build("Z/25")).holds


def test_degenerate_ring_rejected():
    R = build("Z/1")
    for pid in PREDICATE_IDS:
        with pytest.raises(DegenerateRing):
            evaluate(R, pid)


def test_full_scan_stats():
    R = build("Z/15")
    short = is_yaqub_nil_clean(R)
    full = is_yaqub_nil_clean(R, full_scan=True)
    assert short.stats["scanned"] == 3 and full.stats["scanned"] == 15
    assert full.witness == short.witness
    bad = [a for a in range(15) if checkers.refutes_yaqub_nil_clean(R, a)]
    assert full.stats["failures"] == len(bad)
    ok = is_yaqub_nil_clean(build("Z/12"))
    assert ok.stats["scanned"] == ok.stats["domain"] == 12


def test_failed_verdicts_recheck(small_ring):
    R = small_ring
    for pid in PREDICATE_IDS + IDENTITY_TAGS:
        v = evaluate(R, pid)
        if not v.holds:
            assert v.witness is not None
            assert checkers.recheck(R, v), (R.label, pid, v.witness)


def test_verdicts_match_naive_definitions(small_ring):
    R = small_ring
    n = range(R.order)
    units = [u for u in n if checkers.is_unit(R, u)]
    naive = {
        "yaqub_nil_clean": not any(checkers.refutes_yaqub_nil_clean(R, a) for a in n),
        "strongly_nil_clean": not any(checkers.refutes_strongly_nil_clean(R, a) for a in n),
        "strongly_2_nil_clean": not any(checkers.refutes_strongly_2_nil_clean(R, a) for a in n),
        "strongly_weakly_nil_clean": not any(checkers.refutes_strongly_weakly_nil_clean(R, a) for a in n),
        "hirano": not any(checkers.refutes_hirano(R, u) for u in units),
        "two_uu": not any(checkers.refutes_2uu(R, u) for u in units),
        "exchange": not any(checkers.refutes_exchange(R, a) for a in n),
        "strongly_clean": not any(checkers.refutes_clean(R, a, strong=True) for a in n),
    }
    for pid, expected in naive.items():
        assert evaluate(R, pid).holds == expected, pid


def test_implication_lattice(small_ring):
    R = small_ring
    snc, s2 = is_strongly_nil_clean(R).holds, is_strongly_2_nil_clean(R).holds
    swnc, ync = is_strongly_weakly_nil_clean(R).holds, is_yaqub_nil_clean(R).holds
    assert (not snc or s2) and (not s2 or ync) and (not swnc or ync)
    assert not is_2uu(R).holds or is_hirano(R).holds


def test_squares_criterion(small_ring):
    assert squares_strongly_weakly_nil_clean(small_ring).holds == is_yaqub_nil_clean(small_ring).holds


def test_independent_checker_rejects_bogus_witness():
    R = build("Z/5 x Z/5")
    assert not checkers.refutes_hirano(R, lit(R, "(1, 1)"))
    assert not checkers.refutes_yaqub_nil_clean(build("Z/15"), 0)


def test_large_ring_predicates():
    R = build("Z/25[x]/(x^3)")
    assert is_yaqub_nil_clean(R).holds and is_hirano(R).holds and is_periodic(R).holds
    assert not is_strongly_2_nil_clean(R).holds
