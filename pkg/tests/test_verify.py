import json

import pytest

from oracles import thue_morse_prefix
from wordsort import verify as v
from wordsort.factor_enum import stable_factors
from wordsort.sequences import constant, paperfolding, thue_morse
from wordsort.word_ops import format_word, parse_word

T = thue_morse_prefix(1024)

W1 = "0110010110011010010110100110010110011010011001011010010110"
W2 = "0101101001100101101001011001101001100101100110100101101001"
V1 = "1010010110011010010110100110010110011010011001011010010110"
V2 = "1001101001100101101001011001101001100101100110100101101001"


def test_pf_injectivity():
    assert v.verify_pf_injectivity(8, 64).passed
    r5 = v.verify_pf_injectivity(5, 5)
    assert not r5.passed and all(len(w["words"]) >= 2 for w in r5.witnesses)
    r2 = v.verify_pf_injectivity(2, 2)
    assert [{d["word"] for d in w["words"]} for w in r2.witnesses] == [{"10", "01"}]


def test_witness_positions_reproduce_words():
    f = paperfolding()
    for w in v.verify_pf_injectivity(3, 7).witnesses:
        for d in w["words"]:
            p = d["position"] - f.index_base
            assert format_word(f.prefix(p + w["n"])[p:]) == d["word"]


def test_pf_rho_formula():
    assert v.verify_pf_rho_formula(8, 64).passed
    r = v.verify_pf_rho_formula(7, 7)
    assert not r.passed
    assert r.summary == {"rho half": "pass", "tortoise half": "fail"}
    assert r.witnesses[0]["value"] == 26


def test_tm_class_structure():
    # holds from n = 10 on
    assert v.verify_tm_class_structure(10, 64).passed
    r58 = v.verify_tm_class_structure(58, 58)
    assert r58.passed and r58.summary["nontrivial classes per n"] == {58: 2}
    r12 = v.verify_tm_class_structure(12, 12)
    # rho_t(12) - rho_t^t(12) = 36 - 32: four two-word classes
    assert r12.passed and r12.summary["nontrivial classes per n"] == {12: 4}
    with pytest.raises(ValueError):
        v.verify_tm_class_structure(8, 12)


def test_tm_class_structure_counterexample_at_9():
    r = v.verify_tm_class_structure(9, 9)
    assert not r.passed
    assert len(r.witnesses) == 1
    assert {d["word"] for d in r.witnesses[0]["words"]} == {"001011001", "010011001"}
    for d in r.witnesses[0]["words"]:
        assert T[d["position"]:d["position"] + 9] == d["word"]


def test_tm_counter_words_58():
    cp = v.tm_counter_words(58)
    assert (cp.m, cp.b1b2) == (6, "11")
    assert cp.positions[0] == 126 and cp.positions[3] == 190
    assert format_word(cp.words[0]) == W1
    assert format_word(cp.words[3]) == W2


def test_tm_counter_words_11():
    # n - 3 = 8 = 1000 in binary, so m = 4
    cp = v.tm_counter_words(11)
    assert (cp.m, cp.b1b2) == (4, "10")
    assert cp.positions == (30, 38, 42, 46)
    for p, w in zip(cp.positions, cp.words):
        assert T[p:p + 11] == format_word(w)
    with pytest.raises(ValueError):
        v.tm_counter_words(10)


def test_counter_words_are_factors_at_claimed_positions():
    t = thue_morse()
    for n in range(11, 65):
        cp = v.tm_counter_words(n)
        fs = stable_factors(t, n)
        for p, w in zip(cp.positions, cp.words):
            assert w in fs and fs.first_positions[w] <= p
            assert T[p:p + n] == format_word(w)


def test_tm_counters():
    assert v.verify_tm_counters(11, 64).passed
    from wordsort.complexity import class_report

    members = {format_word(w) for c in class_report(thue_morse(), 58, 1).classes if len(c) > 1 for w in c}
    assert members == {W1, W2, V1, V2}


def test_tm_rho_formula():
    assert v.verify_tm_rho_formula(10, 64).passed
    from wordsort.complexity import rho, rho_tortoise

    t = thue_morse()
    assert rho_tortoise(t, 11) == rho(t, 11) - 4 == 28
    assert rho_tortoise(t, 15) == rho(t, 15) - 2 == 42
    assert rho_tortoise(t, 58) == 176


def test_lemma1_suffix():
    w, w2 = parse_word("001011001"), parse_word("010011001")
    assert v.lemma1_suffix(w, w2) == parse_word("011001")
    assert v.lemma1_suffix(parse_word("10"), parse_word("01")) == ()


def test_left_special_lemma():
    assert v.verify_left_special_lemma(thue_morse(), 9, 40).passed
    r = v.verify_left_special_lemma(paperfolding(), 2, 7)
    assert r.passed and r.summary["pairs checked"] > 0
    r0 = v.verify_left_special_lemma(constant(), 1, 10)
    assert r0.passed and r0.summary["pairs checked"] == 0


def test_sandwich():
    rt = v.verify_sandwich(thue_morse(), 10, 64)
    assert rt.passed and rt.summary["empirical C"] == 4
    rf = v.verify_sandwich(paperfolding(), 8, 64)
    assert rf.passed and rf.summary["empirical C"] == 0
    small = v.verify_sandwich(paperfolding(), 1, 7)
    assert small.passed and all(small.summary["gaps"][n] > 0 for n in range(3, 8))


def test_lemma2_suite():
    assert v.verify_tm_left_special_counts(2, 64).passed


def test_reports_are_reproducible_and_serializable():
    a = v.verify_tm_rho_formula(10, 20).to_json()
    b = v.verify_tm_rho_formula(10, 20).to_json()
    assert a == b
    data = json.loads(a)
    assert data["n_range"] == [10, 20] and data["outcome"] == "pass"
    assert "n=10..20" in v.verify_tm_rho_formula(10, 20).to_text()


def test_run_suite_clamps_lower_bounds():
    reports = v.run_suite("all", 11, 20)
    assert len(reports) == 9 and all(r.passed for r in reports)
    assert [r.n_range for r in v.run_suite("all", 1, 8)] == [(8, 8)] * 2 + [(1, 8)] * 4
    with pytest.raises(ValueError):
        v.run_suite("tm-counters", 1, 10)
    with pytest.raises(ValueError):
        v.run_suite("nope", 1, 2)
