import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathfusion.powers import build_certificate, check_hypotheses, contraction_count, norm_bound_trace
from wreathfusion.sets import PreconditionError, WordSet, circ, stability_words
from wreathfusion.words import Word, classify, ones, word


def brute_count(c0, eps=Fraction(1, 4)):
    m, b = 0, Fraction(c0)
    while not b < eps:
        b *= Fraction(95, 100)
        m += 1
    return m


def test_contraction_count_examples():
    assert brute_count(1) == 28
    assert contraction_count(1) == 28
    assert Fraction(19, 20) ** 27 >= Fraction(1, 4) > Fraction(19, 20) ** 28
    assert contraction_count(Fraction(1, 5)) == 0
    assert contraction_count(Fraction(1, 4)) == 1
    assert contraction_count("1/4") == 1


@pytest.mark.parametrize("bad", [0, -1, "-1/2"])
def test_contraction_count_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        contraction_count(bad)


def test_contraction_count_rejects_float():
    with pytest.raises(TypeError):
        contraction_count(0.5)


fractions = st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(10**6))


@given(fractions)
def test_contraction_count_matches_brute_force(c0):
    assert contraction_count(c0) == brute_count(c0)


@given(fractions, fractions)
def test_contraction_count_monotone(a, b):
    lo, hi = sorted((a, b))
    assert contraction_count(lo) <= contraction_count(hi)


@given(fractions, st.fractions(min_value=Fraction(1, 10**4), max_value=1))
def test_custom_threshold(c0, eps):
    assert contraction_count(c0, eps) == brute_count(c0, eps)


def test_norm_bound_trace():
    trace = norm_bound_trace(3, 10)
    assert trace == [3 * Fraction(19, 20) ** i for i in range(11)]
    assert all(a > b for a, b in zip(trace, trace[1:]))


def test_check_hypotheses_dual_z2(z2):
    report = check_hypotheses(z2, "g", maxlen=4, label_budget=2)
    assert report.ok
    assert [i.claim for i in report.items][0] == "M = E_1 ⊔ G_1"


def test_hypothesis_witness_structure(z2):
    x1, x2, _ = (Word(z2, t) for t in stability_words(z2, "g"))
    g = WordSet(z2, [word(z2, "g")])
    img1 = circ(z2, WordSet(z2, [x1]), g)
    for w in img1:
        assert w.letters[:3] == (1, 0, 1) or w.letters[:2] == (1, 1)
    img2 = circ(z2, WordSet(z2, [x2]), g)
    assert not (set(img1) & set(img2))


def test_certificate_dual_z2(z2):
    cert = build_certificate(z2, WordSet(z2, [word(z2, "g")]), "g", 1)
    assert cert.conjugator == word(z2, "g", "e", "e")
    assert cert.k == 2
    assert cert.iterations == 28
    assert cert.norm_bound_trace[-1] < Fraction(1, 4) <= cert.norm_bound_trace[-2]
    assert cert.support_checks.items[0].passed
    assert cert.hypothesis_report.ok
    # hand expansion: (g,e,e)⊗(g) = (g,e,e,g) + (g,e,g), each then ⊗ (e,e,g) gives two words
    assert cert.support_sizes[0] == 4
    assert len(cert.support_sizes) >= 4
    assert cert.support_checks.ok


def test_certificate_s0_words(z2):
    cert = build_certificate(z2, WordSet(z2, [word(z2, "g")]), "g", Fraction(1, 5), trace_sets=True)
    assert cert.iterations == 0
    expected = {
        word(z2, "g", "e", "e", "g", "e", "e", "g"),
        word(z2, "g", "e", "e", "g", "e", "g"),
        word(z2, "g", "e", "g", "e", "e", "g"),
        word(z2, "g", "e", "g", "e", "g"),
    }
    assert set(cert.support_sets[0]) == expected
    assert all(classify(w).G2 for w in expected)
    assert cert.ok


def test_certificate_rejects_e2_support(z2):
    with pytest.raises(PreconditionError, match="support not contained in S"):
        build_certificate(z2, WordSet(z2, [ones(z2, 3)]), "g", 1)


def test_certificate_truncation(z2):
    cert = build_certificate(z2, WordSet(z2, [word(z2, "g")]), "g", 1, max_support=10)
    assert cert.truncated
    assert cert.support_sizes == [4]
    assert not cert.ok


def test_certificate_trace_sets_in_g2(s3):
    cert = build_certificate(s3, WordSet(s3, [word(s3, "e", "p102")]), "p021", Fraction(27, 100),
                             trace_sets=True, label_budget=None, hypothesis_maxlen=3)
    assert cert.iterations == brute_count(Fraction(27, 100)) == 2
    assert not cert.truncated
    for s in cert.support_sets:
        assert all(classify(w).G2 for w in s)
    assert cert.ok


def test_certificate_deterministic(z2):
    def run():
        cert = build_certificate(z2, WordSet(z2, [word(z2, "g"), word(z2, "e", "g")]), "g", 2,
                                 max_support=5000, trace_sets=True)
        return json.dumps(cert.to_dict(), ensure_ascii=False)

    assert run() == run()
