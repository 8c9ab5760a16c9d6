"""Release gate: one test per acceptance criterion, each at its stated bound.

A pass/fail line per criterion is printed in the terminal summary.
"""

import itertools
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from wreathfusion import (
    DimPoly,
    IntervalRing,
    build_certificate,
    contraction_count,
    decompose,
    dim_at,
    dimpoly,
    dual_group_ring,
    load_ring,
    mult_of,
    symmetric_cayley,
    trivial_ring,
    verify_fullness_lemma,
    verify_stability,
)
from wreathfusion.rings import cyclic_cayley
from wreathfusion.sets import WordSet
from wreathfusion.words import Word, classify, empty, involute, ones, word

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def record(acceptance_log):
    def _record(number, title, ok, detail=""):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}"
        if detail:
            line += f" ({detail})"
        acceptance_log.append(line)
        print(line)

    return _record


def words_upto(ring, maxlen, labels):
    return [Word(ring, t) for k in range(maxlen + 1) for t in itertools.product(labels, repeat=k)]


def combine(ring, pairs):
    out = {}
    for (a, b), m in pairs:
        for w, k in decompose(ring, a, b).items():
            out[w] = out.get(w, 0) + m * k
    return out


@pytest.fixture(scope="module")
def sweep_rings():
    return {
        "dual-Z/2": (load_ring(ROOT / "rings" / "dual_z2.json"), None),
        "dual-Z/3": (dual_group_ring(cyclic_cayley(3)), None),
        "S_3 Cayley": (dual_group_ring(symmetric_cayley(3)), None),
        "interval-step1 M=8": (IntervalRing(1, 8), 2),
    }


def test_criterion_1_sn_recovery(record):
    ring = trivial_ring()
    start = time.perf_counter()
    bad = []
    for k in range(2, 11):
        got = decompose(ring, ones(ring, k - 1), ones(ring, 1))
        if got != {ones(ring, k): 1, ones(ring, k - 1): 1, ones(ring, k - 2): 1}:
            bad.append(k)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    record(1, "S_N^+ recovery, 2 <= k <= 10", ok, f"{elapsed:.3f}s, failing k: {bad}")
    assert not bad
    assert elapsed < 1.0


def test_criterion_2_stability_expansion_shapes(record):
    ring = load_ring(ROOT / "rings" / "dual_z2.json")
    start = time.perf_counter()
    a, one = "g", "e"
    abar = ring.dual(a).id
    x1 = word(ring, a, one)
    w = word(ring, "g", "g")
    first = decompose(ring, x1, w)
    total = combine(ring, [((z, involute(x1)), m) for z, m in first.items()])
    mid = list(w)
    expected = {
        word(ring, a, one, *mid, one, abar): 1,
        word(ring, a, one, *mid, abar): 1,
        word(ring, a, *mid, one, abar): 1,
        word(ring, a, *mid, abar): 1,
    }
    elapsed = time.perf_counter() - start
    all_g2 = all(classify(z).G2 for z in total)
    ok = total == expected and all_g2 and elapsed < 1.0
    record(2, "ω(x_1) ⊗ ω(g,g) ⊗ ω(x̄_1) has the four G_2 summands", ok,
           f"{elapsed:.3f}s, {len(total)} words")
    assert total == expected
    assert all_g2
    assert elapsed < 1.0


def test_criterion_3_lemma_sweep(sweep_rings, record):
    start = time.perf_counter()
    failures = []
    for name, (ring, budget) in sweep_rings.items():
        alpha = 1
        for fn in (verify_stability, verify_fullness_lemma):
            report = fn(ring, alpha, 4, budget)
            failures += [(name, i.claim, i.witness) for i in report.failures()]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(3, "stability and fullness verifiers at maxlen 4 on four rings", ok,
           f"{elapsed:.2f}s, {len(failures)} failures")
    assert not failures, failures
    assert elapsed < 60


def test_criterion_4_dimension_identities(sweep_rings, record):
    start = time.perf_counter()
    problems = []
    for name, (ring, _) in sweep_rings.items():
        ws = words_upto(ring, 3, range(2))
        for x, y in itertools.product(ws, repeat=2):
            total = DimPoly()
            for z, m in decompose(ring, x, y).items():
                total = total + dimpoly(ring, z) * m
            if total != dimpoly(ring, x) * dimpoly(ring, y):
                problems.append((name, str(x), str(y)))
        for x in words_upto(ring, 5, range(2)):
            if dim_at(ring, x, 8) <= 0:
                problems.append((name, str(x), "nonpositive"))
    t = trivial_ring()
    n = DimPoly.n()
    if dimpoly(t, ones(t, 1)) != n - 1:
        problems.append(("trivial", "(1)"))
    if dimpoly(t, ones(t, 2)) != n * n - 3 * n + 1:
        problems.append(("trivial", "(1,1)"))
    for x in words_upto(t, 5, range(1)):
        if dim_at(t, x, 8) <= 0:
            problems.append(("trivial", str(x), "nonpositive"))
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 30
    record(4, "dimension identities, trivial-base dimensions, positivity at N=8", ok,
           f"{elapsed:.2f}s, {len(problems)} problems")
    assert not problems, problems
    assert elapsed < 30


@pytest.fixture(scope="module")
def z2_universe():
    ring = load_ring(ROOT / "rings" / "dual_z2.json")
    return ring, words_upto(ring, 3, range(2))


def test_criterion_5_associativity(z2_universe, record):
    ring, ws = z2_universe
    start = time.perf_counter()
    bad = []
    for x, y, z in itertools.product(ws, repeat=3):
        left = combine(ring, [((w, z), m) for w, m in decompose(ring, x, y).items()])
        right = combine(ring, [((x, w), m) for w, m in decompose(ring, y, z).items()])
        if left != right:
            bad.append((str(x), str(y), str(z)))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    record(5, f"associativity over dual-Z/2, {len(ws) ** 3} triples", ok, f"{elapsed:.2f}s")
    assert not bad, bad[:5]
    assert elapsed < 120


def test_criterion_6_frobenius_and_conjugation(z2_universe, record):
    ring, ws = z2_universe
    bad = []
    for x in ws:
        if mult_of(ring, x, involute(x), empty(ring)) != 1:
            bad.append(("frobenius", str(x)))
        for y in ws:
            if y != involute(x) and mult_of(ring, x, y, empty(ring)) != 0:
                bad.append(("frobenius", str(x), str(y)))
    targets = set(ws)
    for x, y in itertools.product(ws, repeat=2):
        targets.update(decompose(ring, x, y).words())
    for x, y in itertools.product(ws, repeat=2):
        for z in targets:
            if mult_of(ring, x, y, z) != mult_of(ring, involute(y), involute(x), involute(z)):
                bad.append(("conjugation", str(x), str(y), str(z)))
    record(6, "Frobenius at ∅ and conjugation symmetry", not bad, f"{len(bad)} violations")
    assert not bad, bad[:5]


def test_criterion_7_powers_certificate(record):
    ring = load_ring(ROOT / "rings" / "dual_z2.json")
    start = time.perf_counter()
    m = contraction_count(1)
    exact = Fraction(19, 20) ** 27 >= Fraction(1, 4) > Fraction(19, 20) ** 28
    cert = build_certificate(ring, WordSet(ring, [word(ring, "g")]), "g", 1, max_support=100_000)
    elapsed = time.perf_counter() - start
    steps = len(cert.support_sizes) - 1
    ok = (
        m == 28
        and exact
        and cert.conjugator == word(ring, "g", "e", "e")
        and cert.support_checks.items[0].passed
        and cert.support_checks.ok
        and steps >= 3
        and elapsed < 30
    )
    record(7, "contraction count 28 and certificate trace", ok,
           f"{elapsed:.2f}s, untruncated steps {steps}, sizes {cert.support_sizes}")
    assert m == 28 and exact
    assert cert.conjugator == word(ring, "g", "e", "e")
    assert cert.support_checks.items[0].passed
    assert cert.support_checks.ok
    assert steps >= 3
    assert elapsed < 30


def test_criterion_8_determinism(record):
    argv = [sys.executable, "-m", "wreathfusion", "verify", "sweep",
            "--ring", str(ROOT / "rings" / "dual_z2.json"), "--maxlen", "4"]
    first = subprocess.run(argv, capture_output=True, check=False)
    second = subprocess.run(argv, capture_output=True, check=False)
    ok = first.stdout == second.stdout and first.returncode == second.returncode == 0
    record(8, "verify sweep output is byte-identical across runs", ok, f"{len(first.stdout)} bytes")
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
