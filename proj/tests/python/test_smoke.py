"""Smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import lefschetz


def frac(s):
    return Fraction(s)


def test_base_report():
    r = lefschetz.base_report(3)
    assert r["n"] == "28"
    assert r["sigma"] == "-16"
    assert r["K2"] == "8"
    assert r["chi_f"] == "3"
    assert r["lambda"] == "8/3"
    assert r["lambda_dec"] == "2.666667"


def test_sequence_matches_closed_form():
    steps = lefschetz.sequence(3, h=1, r=1, n=6, mode="ledger")
    lams = [s["report"]["lambda"] for s in steps]
    expect = [Fraction(2 ** (n + 1) + 14, 2 ** n + 5) for n in range(7)]
    assert [frac(l) for l in lams] == expect
    cf = lefschetz.closed_form(8, 3, 1, 1, 6)
    assert frac(cf["lambda"]) == expect[6]


def test_explicit_word_and_walks():
    fam = lefschetz.family(3, 1, mode="explicit")
    assert fam["report"]["lambda"] == "18/7"
    certs = fam["certificates"]
    assert certs["simply_connected"] and certs["minimal"] and certs["slope_bounds"]
    word = fam["word"]
    assert len(word) == 132
    assert word.verify()
    assert word.h1_divisors() == []

    walked, rep = word.lantern_walk("c1", "down")
    assert frac(rep["after"]["lambda"]) < frac(rep["before"]["lambda"])
    assert walked.verify()


def test_word_operations_and_json():
    w = lefschetz.Word.hyperelliptic(3)
    assert len(w) == 28
    assert w.verify()
    moved = w.hurwitz(0, "right")
    assert moved.verify()
    assert moved.slope() == w.slope()
    text = w.to_json()
    back = lefschetz.Word.from_json(text)
    assert back.letters() == w.letters()
    assert back.to_json() == text


def test_slope_limit_and_snf():
    assert lefschetz.slope_limit(1) == "2"
    assert lefschetz.slope_limit(4) == "16/5"
    out = lefschetz.smith_normal_form([[2, 4], [6, 8]])
    d = out["D"]
    assert d[0][0] == 2 and d[1][1] == 4 and d[0][1] == 0 and d[1][0] == 0


def test_errors_are_mapped():
    with pytest.raises(ValueError):
        lefschetz.base_report(1)
    with pytest.raises(RuntimeError):
        lefschetz.sequence(3, h=1, r=1, n=3, mode="explicit", budget=50)
