import json

import pytest

from yaqub.rings import build
from yaqub.theorems import THEOREM_IDS, Guards, closure_samples, commuting_tripotent_condition, verify_theorem


def rec(text, tid, **kw):
    return verify_theorem(build(text), tid, **kw)


def test_spec_examples():
    r = rec("Z/10", "T5.4")
    assert (r.left, r.right, r.agree) == (True, True, True)
    r = rec("Z/15", "C3.2")
    assert r.left is False and r.right is False and r.agree
    assert r.witnesses["a_minus_a5_nil"] and r.witnesses["image_Z3xZ5"]
    r = rec("Z/2", "T2.2")
    assert r.left and r.right and r.agree
    r = rec("Z/15", "T3.1")
    assert not r.left and not r.right and r.agree
    r = rec("T2(Z/3)", "T2.8")
    assert r.left and r.right and r.witnesses["triangular_strongly_2_nil_clean"] and r.agree


def test_corollary_3_2_discriminator():
    r = rec("Z/30", "C3.2")
    assert r.witnesses["a_minus_a5_nil"] and r.witnesses["image_Z3xZ5"]
    assert r.left is False and r.right is False and r.agree


def test_triangular_over_non_strongly_2_nil_clean_base():
    r = rec("T2(Z/5)", "T2.8")
    assert r.left is False and r.right is False and r.agree
    r = rec("T2(Z/5)", "T4.6")
    assert r.agree and r.left is False


@pytest.mark.parametrize("text", ["Z/2 x Z/2", "Z/5 x Z/5", "Z/3 x Z/3 x Z/3", "Z/4 x Z/4"])
def test_power_laws(text):
    for tid in ("C2.6", "L4.5"):
        assert rec(text, tid).agree


def test_product_law_sound_cases():
    for text in ["Z/2 x Z/5", "Z/4 x Z/9", "Z/3 x Z/9", "Z/2 x Z/25", "Z/5 x Z/5"]:
        assert rec(text, "T2.5").agree, text


def test_product_law_defect_when_3_and_5_mix():
    # both factors are Yaqub nil-clean and only one fails to be strongly 2-nil-clean,
    # yet the product is not Yaqub nil-clean
    r = rec("Z/3 x Z/5", "T2.5")
    assert r.left is False and r.right is True and r.agree is False
    assert r.witnesses["not_strongly_2_nil_clean"] == ["Z/5"]


def test_skips_are_recorded():
    r = rec("Z/128", "L2.7")
    assert r.skipped and r.skipped_reason.startswith("size guard") and r.agree is None
    r = rec("Z/10", "T2.8")
    assert r.skipped_reason.startswith("not applicable")
    r = rec("Z/2000", "T5.4")
    assert r.skipped
    r = verify_theorem(build("Z/2000"), "T5.4", Guards(clean_scan_max=2000))
    assert not r.skipped and r.agree


def test_unknown_theorem():
    with pytest.raises(ValueError):
        rec("Z/2", "T9.9")


def test_record_json():
    r = rec("Z/12", "T3.6")
    js = r.to_json()
    assert set(js) == {"ring", "theorem_id", "left", "right", "agree", "witnesses", "millis"}
    assert js["ring"] == "Z/12" and js["witnesses"]["form"] == "R1xR2"
    assert r.to_json(timings=False)["millis"] is None
    json.dumps(js)
    assert "skipped_reason" in rec("Z/12", "C2.6").to_json()


@pytest.mark.parametrize("text", ["Z/12", "T2(Z/4)", "Z/5 x Z/5", "M2(Z/2)", "Z/3 x Z/5", "Z/4[x]/(x^2)",
                                  "T2(Z/9)", "Z/30"])
def test_all_theorems_agree(text):
    R = build(text)
    for tid in THEOREM_IDS:
        r = verify_theorem(R, tid)
        if r.skipped:
            continue
        if tid == "T2.5" and text == "Z/3 x Z/5":
            assert r.agree is False
            continue
        assert r.agree, (text, tid, r.left, r.right, r.witnesses)


def test_commuting_tripotent_condition():
    assert commuting_tripotent_condition(build("T2(Z/3)")) == (True, None)
    holds, bad = commuting_tripotent_condition(build("Z/7"))
    assert not holds and bad == 2


def test_closure_samples_deterministic():
    R = build("T2(Z/4)")
    a = [S.label for S in closure_samples(R, seed=3)]
    assert a == [S.label for S in closure_samples(R, seed=3)]
    assert all(S.label.startswith(("sub(", "corner(")) for S in closure_samples(R, seed=3))
