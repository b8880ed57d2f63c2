import pytest

from conftest import SMALL, ring
from yaqub import checkers
from yaqub.errors import PreconditionFailed, SizeGuard
from yaqub.predicates import is_yaqub_nil_clean
from yaqub.rings import build, is_iso_zmod
from yaqub.structure import (
    extract_lemma_3_8, extract_lemma_3_9, extract_tripotent, factorize, hom_image_detect,
    lemma_3_8_converse, lemma_3_9_converse, prime_component_decomposition, classify_theorem_3_1,
    classify_theorem_3_6, verify_tripotent_witness,
)


def test_factorize():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(97) == [(97, 1)]


def test_decomposition_examples():
    d = prime_component_decomposition(build("Z/6"))
    assert [(c.prime, c.idempotent) for c in d.factors] == [(2, 3), (3, 4)]
    assert is_iso_zmod(d.factors[0].ring, 2) and is_iso_zmod(d.factors[1].ring, 3)
    d = prime_component_decomposition(build("Z/8"))
    assert len(d.factors) == 1 and d.idempotents == [1]
    d = prime_component_decomposition(build("Z/30"))
    assert d.idempotents == [15, 10, 6]
    assert [c.ring.order for c in d.factors] == [2, 3, 5]


@pytest.mark.parametrize("text", SMALL + ["T2(Z/3) x Z/4", "M2(Z/6)"])
def test_decomposition_certificate(text):
    d = prime_component_decomposition(ring(text) if text in SMALL else build(text))
    assert d.certificate_holds()


@pytest.mark.parametrize("text, case", [
    ("Z/10", "R1xR3"), ("Z/12", "R1xR2"), ("Z/15", "NotYaqubNilClean"), ("Z/20", "R1xR3"),
    ("Z/9", "R2"), ("Z/7", "NotYaqubNilClean"), ("Z/5 x Z/5", "NotYaqubNilClean"), ("T2(Z/4)", "R1"),
    ("Z/25[x]/(x^3)", "R3"), ("Z/3 x Z/3", "R2"), ("Z/2 x Z/9", "R1xR2"), ("M2(Z/2)", "NotYaqubNilClean"),
])
def test_classification(text, case):
    R = build(text)
    out = classify_theorem_3_1(R)
    assert out.case_tag == case
    assert classify_theorem_3_6(R).case_tag == case
    assert (case != "NotYaqubNilClean") == is_yaqub_nil_clean(R).holds


def test_classification_evidence():
    out = classify_theorem_3_1(build("Z/12"))
    four = [f for f in out.factor_evidence if f["prime"] == 2][0]
    assert four["order"] == 4 and len(four["radical"]) == 2 and four["boolean"]
    three = [f for f in out.factor_evidence if f["prime"] == 3][0]
    assert three["yaqub_ring"]
    assert classify_theorem_3_1(build("Z/15")).witness["a"] == 2


def test_residue_route_evidence():
    out = classify_theorem_3_6(build("Z/20"))
    ev = out.factor_evidence[0]
    assert ev["radical"] == [0, 10] and ev["residue_order"] == 10 and "split_idempotent" in ev


@pytest.mark.parametrize("text, a, e, mode", [("Z/5", 2, 1, "plus3"), ("Z/4", 3, 1, "minus"), ("Z/4", 2, 0, "minus"),
                                              ("Z/9", 0, 0, "minus")])
def test_tripotent_examples(text, a, e, mode):
    R = build(text)
    w = extract_tripotent(R, a)
    assert (w.e, w.mode) == (e, mode)
    assert verify_tripotent_witness(R, w)
    assert checkers.confirms_tripotent_witness(R, a, w.e, w.mode)


def test_tripotent_precondition():
    with pytest.raises(PreconditionFailed):
        extract_tripotent(build("Z/7"), 2)


@pytest.mark.parametrize("text", ["Z/12", "Z/20", "T2(Z/3)", "Z/3 x Z/9", "Z/5[x]/(x^2)", "T2(Z/2) x Z/5"])
def test_every_element_has_witness(text):
    R = build(text)
    for a in range(R.order):
        w = extract_tripotent(R, a)
        assert verify_tripotent_witness(R, w)
        assert checkers.confirms_tripotent_witness(R, a, w.e, w.mode)


def test_lemma_3_8_examples():
    R = build("Z/5")
    assert extract_lemma_3_8(R, 2).e == 2
    assert extract_lemma_3_8(R, 0).e == 0
    Z25 = build("Z/25")
    w = extract_lemma_3_8(Z25, 7)
    assert Z25.pow(w.e, 3) == Z25.times(4, w.e) and w.e % 5 == 7 % 5
    assert lemma_3_8_converse(Z25, 7, w.e)
    with pytest.raises(PreconditionFailed):
        extract_lemma_3_8(build("Z/7"), 1)


@pytest.mark.parametrize("text", ["Z/5", "Z/25", "Z/5[x]/(x^2)", "T2(Z/5)"])
def test_lemma_3_8_3_9_round_trip(text):
    R = build(text)
    seen = 0
    for a in range(R.order):
        if not checkers.nilpotent(R, R.add(a, R.pow(a, 3))):
            continue
        seen += 1
        q = extract_lemma_3_8(R, a)
        assert R.pow(q.e, 3) == R.times(4, q.e) and checkers.nilpotent(R, q.w)
        assert lemma_3_8_converse(R, a, q.e)
        t = extract_lemma_3_9(R, a)
        assert R.pow(t.e, 3) == t.e and checkers.nilpotent(R, R.add(a, R.times(3, t.e)))
        assert lemma_3_9_converse(R, a, t.e)
    assert seen > 0


def test_converses_reject_bad_input():
    R = build("Z/5")
    assert not lemma_3_8_converse(R, 2, 1)  # 1^3 != 4
    assert not lemma_3_9_converse(R, 2, 2)  # 2 is not tripotent


def test_hom_images():
    v = hom_image_detect(build("Z/30"), "Z3xZ5")
    assert v.holds and v.witness["ideal"] == [0, 15]
    assert not hom_image_detect(build("Z/50"), "Z5xZ5").holds
    assert hom_image_detect(build("Z/5 x Z/5"), "Z5xZ5").holds
    assert not hom_image_detect(build("Z/5 x Z/5"), "Z3xZ5").holds
    assert hom_image_detect(build("Z/15"), "Z3xZ5").holds
    with pytest.raises(SizeGuard):
        hom_image_detect(build("Z/128"), "Z3xZ5")
