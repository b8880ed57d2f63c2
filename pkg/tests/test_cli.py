import csv
import io
import json

import pytest

from yaqub.cli import explain, main
from yaqub.corpus import CorpusSpec, default_corpus, derived_samples, run_corpus, structured_corpus


def expected_ync(n):
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
    return n == 1


def run(argv):
    out = io.StringIO()
    return main(argv, out), out.getvalue()


def test_classify_zmod(tmp_path):
    js, cs = tmp_path / "r.json", tmp_path / "r.csv"
    code, _ = run(["classify", "--zmod", "2..30", "--out", str(js), "--csv", str(cs)])
    assert code == 0
    report = json.loads(js.read_text())
    rows = {r["ring"]: r for r in report["rings"]}
    assert len(rows) == 29
    for n in range(2, 31):
        ync = rows[f"Z/{n}"]["verdicts"]["yaqub_nil_clean"]["holds"]
        assert ync == (expected_ync(n) and not (n % 3 == 0 and n % 5 == 0)), n
    assert not rows["Z/15"]["verdicts"]["yaqub_nil_clean"]["holds"]
    assert not rows["Z/30"]["verdicts"]["yaqub_nil_clean"]["holds"]
    # CSV and JSON carry the same verdicts
    for line in csv.DictReader(cs.read_text().splitlines()):
        v = rows[line["ring"]]["verdicts"]
        for pid, cell in line.items():
            if pid in v:
                assert cell == str(v[pid]["holds"]).lower()
        assert line["case"] == rows[line["ring"]]["classification"]["case"]


def test_classify_structured_witnesses(tmp_path):
    js = tmp_path / "r.json"
    code, _ = run(["classify", "--ring", "M2(Z/2)", "--ring", "Z/5 x Z/5", "--out", str(js)])
    assert code == 0
    rows = {r["ring"]: r for r in json.loads(js.read_text())["rings"]}
    h = rows["M2(Z/2)"]["verdicts"]["hirano"]
    assert h["holds"] is False and h["witness"]["value"] == "[[0, 1], [1, 1]]"
    h = rows["Z/5 x Z/5"]["verdicts"]["hirano"]
    assert h["holds"] is False and h["witness"]["value"] == "(1, 2)"


def test_false_verdicts_carry_witnesses(tmp_path):
    js = tmp_path / "r.json"
    run(["classify", "--zmod", "2..40", "--ring", "T2(Z/5)", "--out", str(js)])
    for r in json.loads(js.read_text())["rings"]:
        for v in r["verdicts"].values():
            if v["holds"] is False:
                assert "witness" in v


def test_reports_byte_identical(tmp_path):
    outs = []
    for i, jobs in enumerate(["1", "2", "1"]):
        js, cs = tmp_path / f"{i}.json", tmp_path / f"{i}.csv"
        run(["verify", "--zmod", "2..24", "--ring", "T2(Z/3)", "--ring", "Z/2 x Z/5", "--theorems", "T3.1,T5.4,L2.3",
             "--out", str(js), "--csv", str(cs), "--jobs", jobs, "--seed", "7"])
        outs.append((js.read_bytes(), cs.read_bytes()))
    assert outs[0] == outs[1] == outs[2]


def test_timings_flag(tmp_path):
    js = tmp_path / "r.json"
    run(["classify", "--zmod", "2..5", "--out", str(js), "--timings"])
    assert json.loads(js.read_text())["rings"][0]["millis"] is not None
    run(["classify", "--zmod", "2..5", "--out", str(js)])
    assert json.loads(js.read_text())["rings"][0]["millis"] is None


def test_verify_exit_codes():
    code, out = run(["verify", "--ring", "Z/15", "--theorems", "T3.1"])
    assert code == 0 and "disagreements: 0" in out
    code, _ = run(["verify", "--ring", "T2(Z/3)", "--theorems", "T2.8"])
    assert code == 0
    code, out = run(["verify", "--ring", "Z/3 x Z/5", "--theorems", "T2.5"])
    assert code == 1 and "T2.5 on Z/3 x Z/5" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--ring", "Z/", "--theorems", "T3.1"],
    ["verify", "--ring", "Z/4", "--theorems", "X1"],
    ["classify", "--zmod", "9..3"],
    ["classify", "--zmod", "abc"],
    ["explain", "Z/5", "9"],
    ["explain", "T3(Z/9)", "1"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    assert run(argv)[0] == 2


def test_explain_examples():
    text = explain("Z/5", 2)
    assert "witness e = 1 [index 1]" in text and "mode plus3" in text and "verified" in text
    text = explain("Z/4", 2)
    assert "witness e = 0" in text and "mode minus" in text
    text = explain("Z/7", 2)
    assert "not Yaqub nil-clean" in text and "witness e" not in text
    text = explain("M2(Z/3)", 5)
    assert "ring M2(Z/3)" in text
    assert run(["explain", "Z/5", "2"])[0] == 0


def test_default_corpus_shape():
    spec = default_corpus()
    exprs = spec.expressions()
    assert 150 <= len(exprs) <= 260
    assert "T3(Z/9)" in exprs and "Z/25[x]/(x^3)" in exprs and "M2(Z/3)" in exprs
    assert sum(e.count(" x ") == 1 and "(" not in e for e in exprs) == 21
    assert derived_samples(3) == derived_samples(3)
    assert len(structured_corpus()) == 10 + 2 + 21 + 4


def test_order_overflow_is_recorded():
    rep = run_corpus(CorpusSpec(zmod_range=None, structured=["T3(Z/9)", "Z/3"]), with_theorems=False)
    skipped = rep["summary"]["skipped"]
    assert skipped and skipped[0]["ring"] == "T3(Z/9)" and "order guard" in skipped[0]["reason"]


def test_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(zmod_range=(1, 5)).validate()
    from yaqub.errors import RingSyntaxError
    with pytest.raises(RingSyntaxError):
        CorpusSpec(structured=["Z/3 x"]).validate()
