import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathfusion import DimPoly, decompose, dim_at, dimpoly, load_ring, mult_of
from wreathfusion.fusion import decompose_letters
from wreathfusion.rings import dual_group_ring, symmetric_cayley
from wreathfusion.words import MixedRingsError, Word, empty, involute, ones, word

# Rep(A_4): 1, w, w2 (dims 1) and the 3-dim irrep t with t⊗t = 1+w+w2+2t.
REP_A4 = {
    "labels": ["1", "w", "w2", "t"],
    "unit": "1",
    "dual": {"1": "1", "w": "w2", "w2": "w", "t": "t"},
    "dims": {"1": 1, "w": 1, "w2": 1, "t": 3},
    "fusion": {
        **{f"1*{a}": {a: 1} for a in ["1", "w", "w2", "t"]},
        **{f"{a}*1": {a: 1} for a in ["w", "w2", "t"]},
        "w*w": {"w2": 1},
        "w*w2": {"1": 1},
        "w2*w": {"1": 1},
        "w2*w2": {"w": 1},
        "w*t": {"t": 1},
        "t*w": {"t": 1},
        "w2*t": {"t": 1},
        "t*w2": {"t": 1},
        "t*t": {"1": 1, "w": 1, "w2": 1, "t": 2},
    },
}


@pytest.fixture(scope="module")
def rep_a4():
    return load_ring(REP_A4)


def universe(ring, maxlen, labels):
    return [Word(ring, t) for k in range(maxlen + 1) for t in itertools.product(labels, repeat=k)]


def combine(ring, pairs):
    out = {}
    for (a, b), m in pairs:
        for w, k in decompose(ring, a, b).items():
            out[w] = out.get(w, 0) + m * k
    return out


def test_trivial_base_k2(trivial):
    one = ones(trivial, 1)
    d = decompose(trivial, one, one)
    assert d == {empty(trivial): 1, ones(trivial, 1): 1, ones(trivial, 2): 1}
    assert [str(w) for w in d] == ["()", "(1)", "(1,1)"]


def test_unit_law_example(z2):
    y = word(z2, "g", "e", "g")
    assert decompose(z2, empty(z2), y) == {y: 1}
    assert decompose(z2, y, empty(z2)) == {y: 1}


def test_dual_z2_g_g(z2):
    g = word(z2, "g")
    d = decompose(z2, g, g)
    assert d == {empty(z2): 1, word(z2, "e"): 1, word(z2, "g", "g"): 1}
    # oracle: both bracketings of (g)⊗(g)⊗(g) agree, so the (g)⊗(g) table is consistent
    left = combine(z2, [((w, g), m) for w, m in d.items()])
    right = combine(z2, [((g, w), m) for w, m in decompose(z2, g, g).items()])
    assert left == right


def test_mult_of_examples(z2):
    g, e = word(z2, "g"), word(z2, "e")
    assert mult_of(z2, g, g, empty(z2)) == 1
    assert mult_of(z2, e, e, g) == 0
    x = word(z2, "g", "e", "g", "g")
    assert mult_of(z2, x, involute(x), empty(z2)) == 1


def test_mixed_rings(z2, z3):
    with pytest.raises(MixedRingsError):
        decompose(z2, word(z2, "g"), word(z3, "a"))


def test_trivial_dimensions(trivial):
    n = DimPoly.n()
    d1 = dimpoly(trivial, ones(trivial, 1))
    assert d1 == n - 1
    # oracle: (n-1)^2 = dim ∅ + dim (1) + dim (1,1)
    oracle = (n - 1) * (n - 1) - 1 - (n - 1)
    assert dimpoly(trivial, ones(trivial, 2)) == oracle
    assert dimpoly(trivial, ones(trivial, 2)).coeffs == (1, -3, 1)
    assert dimpoly(trivial, empty(trivial)) == 1


def test_dim_at(trivial, z2):
    assert dim_at(trivial, ones(trivial, 2), 8) == 64 - 24 + 1 == 41
    assert dim_at(z2, empty(z2), 8) == 1
    assert dim_at(z2, word(z2, "g"), 8) == 8
    with pytest.raises(ValueError):
        dim_at(z2, word(z2, "g"), 0)


def test_sn_plus_dimensions_follow_recursion(trivial):
    # dim ω(1^k) = (n-1) dim ω(1^(k-1)) - dim ω(1^(k-1)) - dim ω(1^(k-2))
    n = DimPoly.n()
    prev, cur = DimPoly.const(1), n - 1
    for k in range(2, 9):
        prev, cur = cur, (n - 1) * cur - cur - prev
        assert dimpoly(trivial, ones(trivial, k)) == cur


@pytest.mark.parametrize("name", ["z2", "z3", "s3", "interval1", "rep_a4"])
def test_dimension_consistency(name, request):
    ring = request.getfixturevalue(name)
    ws = universe(ring, 3, range(2))
    for x, y in itertools.product(ws, repeat=2):
        total = DimPoly()
        for z, m in decompose(ring, x, y).items():
            total = total + dimpoly(ring, z) * m
        assert total == dimpoly(ring, x) * dimpoly(ring, y)


@pytest.mark.parametrize("name", ["z2", "z3", "s3", "interval1", "interval2", "rep_a4"])
def test_positivity_and_degree(name, request):
    ring = request.getfixturevalue(name)
    for x in universe(ring, 5, range(2)):
        assert dim_at(ring, x, 8) > 0
        assert dimpoly(ring, x).degree == len(x)


def test_associativity_with_multiplicities(rep_a4):
    ws = universe(rep_a4, 2, [0, 3, 1])
    for x, y, z in itertools.product(ws, repeat=3):
        left = combine(rep_a4, [((w, z), m) for w, m in decompose(rep_a4, x, y).items()])
        right = combine(rep_a4, [((x, w), m) for w, m in decompose(rep_a4, y, z).items()])
        assert left == right


def test_fusion_multiplicity_carried(rep_a4):
    t = word(rep_a4, "t")
    d = decompose(rep_a4, t, t)
    assert d[word(rep_a4, "t")] == 2
    assert d[empty(rep_a4)] == 1
    assert d[word(rep_a4, "t", "t")] == 1


def test_fusion_keeps_unit_letter(z2):
    # g⊗g = e fuses to the letter e, which is kept: (g,g)⊗(g) contains (g,e)
    d = decompose(z2, word(z2, "g", "g"), word(z2, "g"))
    assert word(z2, "g", "e") in d
    assert d[word(z2, "g")] == 1


S3 = dual_group_ring(symmetric_cayley(3))
s3_words = st.lists(st.integers(0, 5), max_size=4).map(lambda ls: Word(S3, ls))


@settings(max_examples=150, deadline=None)
@given(s3_words, s3_words)
def test_conjugation_symmetry_s3(x, y):
    lhs = {involute(z): m for z, m in decompose(S3, x, y).items()}
    assert decompose(S3, involute(y), involute(x)) == lhs


@settings(max_examples=150, deadline=None)
@given(s3_words, s3_words)
def test_frobenius_s3(x, y):
    expected = 1 if y == involute(x) else 0
    assert mult_of(S3, x, y, empty(S3)) == expected


@settings(max_examples=60, deadline=None)
@given(s3_words, s3_words, s3_words)
def test_associativity_s3(x, y, z):
    left = combine(S3, [((w, z), m) for w, m in decompose(S3, x, y).items()])
    right = combine(S3, [((x, w), m) for w, m in decompose(S3, y, z).items()])
    assert left == right


def test_decomposition_ordering(z2):
    d = decompose(z2, word(z2, "g", "e"), word(z2, "e", "g"))
    keys = [w.sort_key() for w in d]
    assert keys == sorted(keys)
    assert all(m > 0 for _, m in d.items())


def test_decompose_letters_counts_each_split_once(trivial):
    # 1^2 ⊗ 1^2: m=0 gives 1^4 and 1^3, m=1 gives 1^2 and 1, m=2 gives ∅,
    # i.e. the S_N^+ rule u_2 ⊗ u_2 = u_0 + u_1 + u_2 + u_3 + u_4
    got = decompose_letters(trivial, (0, 0), (0, 0))
    assert got == {(0, 0, 0, 0): 1, (0, 0, 0): 1, (0, 0): 1, (0,): 1, (): 1}
