"""Property oracles for the word fusion rule, and the all-in-one sweep."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._parallel import chunked_map
from .fusion import decompose_letters, dim_at, dimpoly
from .poly import DimPoly
from .rings import BaseRing, validate_ring
from .sets import (
    DEFAULT_LABEL_BUDGET,
    DEFAULT_MAXLEN,
    VerificationItem,
    VerificationReport,
    _fmt,
    _universe,
    _universe_text,
    verify_fullness_lemma,
    verify_stability,
)
from .powers import check_hypotheses
from .words import Word, involute_letters

DEFAULT_ORACLE_MAXLEN = 3
DEFAULT_POSITIVITY_MAXLEN = 5
POSITIVITY_N = 8


def _fail(claim, text, witness, counts):
    return VerificationItem(claim, text, False, witness, counts)


def _combine(ring, left: dict, right_of) -> dict:
    out: dict = {}
    for w, m in left.items():
        for v, k in right_of(w).items():
            out[v] = out.get(v, 0) + m * k
    return out


def check_unit_law(ring: BaseRing, words: list[tuple], text: str) -> VerificationItem:
    claim = "ω(∅) ⊗ ω(y) = ω(y) and ω(x) ⊗ ω(∅) = ω(x)"
    for w in words:
        if decompose_letters(ring, (), w) != {w: 1} or decompose_letters(ring, w, ()) != {w: 1}:
            return _fail(claim, text, {"word": _fmt(ring, w)}, {"words": len(words)})
    return VerificationItem(claim, text, True, None, {"words": len(words)})


def check_involution(ring: BaseRing, words: list[tuple], text: str) -> VerificationItem:
    claim = "x̿ = x and (x,y)‾ = (ȳ,x̄)"
    inv = lambda t: involute_letters(ring, t)  # noqa: E731
    for x in words:
        if inv(inv(x)) != x:
            return _fail(claim, text, {"x": _fmt(ring, x)}, {"words": len(words)})
        for y in words:
            if inv(x + y) != inv(y) + inv(x):
                return _fail(claim, text, {"x": _fmt(ring, x), "y": _fmt(ring, y)}, {"words": len(words)})
    return VerificationItem(claim, text, True, None, {"words": len(words)})


def check_frobenius(ring: BaseRing, words: list[tuple], text: str) -> VerificationItem:
    claim = "mult(x, y, ∅) = [y = x̄]"
    for x, y in itertools.product(words, repeat=2):
        got = decompose_letters(ring, x, y).get((), 0)
        want = 1 if y == involute_letters(ring, x) else 0
        if got != want:
            return _fail(claim, text, {"x": _fmt(ring, x), "y": _fmt(ring, y), "mult": got},
                         {"pairs": len(words) ** 2})
    return VerificationItem(claim, text, True, None, {"pairs": len(words) ** 2})


def check_conjugation(ring: BaseRing, words: list[tuple], text: str) -> VerificationItem:
    claim = "mult(x, y, z) = mult(ȳ, x̄, z̄)"
    inv = lambda t: involute_letters(ring, t)  # noqa: E731
    for x, y in itertools.product(words, repeat=2):
        lhs = {inv(z): m for z, m in decompose_letters(ring, x, y).items()}
        rhs = decompose_letters(ring, inv(y), inv(x))
        if lhs != rhs:
            z = min((t for t in set(lhs) | set(rhs) if lhs.get(t) != rhs.get(t)), key=lambda t: (len(t), t))
            return _fail(claim, text, {"x": _fmt(ring, x), "y": _fmt(ring, y), "z": _fmt(ring, inv(z))},
                         {"pairs": len(words) ** 2})
    return VerificationItem(claim, text, True, None, {"pairs": len(words) ** 2})


def check_associativity(ring: BaseRing, words: list[tuple], text: str) -> VerificationItem:
    claim = "(ω(x) ⊗ ω(y)) ⊗ ω(z) = ω(x) ⊗ (ω(y) ⊗ ω(z))"
    pairs = list(itertools.product(words, repeat=2))

    def work(chunk):
        for x, y in chunk:
            xy = decompose_letters(ring, x, y)
            for z in words:
                left = _combine(ring, xy, lambda w: decompose_letters(ring, w, z))
                right = _combine(ring, decompose_letters(ring, y, z), lambda w: decompose_letters(ring, x, w))
                if left != right:
                    return (x, y, z)
        return None

    for bad in chunked_map(work, pairs, min_chunk=64):
        if bad is not None:
            return _fail(claim, text, {"triple": [_fmt(ring, t) for t in bad]}, {"triples": len(words) ** 3})
    return VerificationItem(claim, text, True, None, {"triples": len(words) ** 3})


def check_dimensions(ring: BaseRing, words: list[tuple], text: str) -> VerificationItem:
    claim = "Σ mult(z)·dim ω(z) = dim ω(x)·dim ω(y)"
    dp = lambda t: dimpoly(ring, Word._raw(ring, t))  # noqa: E731
    for x, y in itertools.product(words, repeat=2):
        total = DimPoly()
        for z, m in decompose_letters(ring, x, y).items():
            total = total + dp(z) * m
        if total != dp(x) * dp(y):
            return _fail(claim, text, {"x": _fmt(ring, x), "y": _fmt(ring, y),
                                       "sum": str(total), "product": str(dp(x) * dp(y))},
                         {"pairs": len(words) ** 2})
    return VerificationItem(claim, text, True, None, {"pairs": len(words) ** 2})


def check_degree(ring: BaseRing, words: list[tuple], text: str) -> VerificationItem:
    claim = "deg dim ω(x) = |x|"
    for x in words:
        p = dimpoly(ring, Word._raw(ring, x))
        if p.degree != len(x):
            return _fail(claim, text, {"x": _fmt(ring, x), "dim": str(p)}, {"words": len(words)})
    return VerificationItem(claim, text, True, None, {"words": len(words)})


def check_positivity(ring: BaseRing, words: list[tuple], text: str, N: int = POSITIVITY_N) -> VerificationItem:
    claim = f"dim ω(x) > 0 at N = {N}"
    for x in words:
        v = dim_at(ring, Word._raw(ring, x), N)
        if v <= 0:
            return _fail(claim, text, {"x": _fmt(ring, x), "dim": v}, {"words": len(words)})
    return VerificationItem(claim, text, True, None, {"words": len(words)})


def check_sn_recovery(ring: BaseRing, kmax: int = 10) -> VerificationItem:
    claim = "ω(1^(k-1)) ⊗ ω(1) = ω(1^k) ⊕ ω(1^(k-1)) ⊕ ω(1^(k-2))"
    u = ring.unit_index
    text = f"{ring.name}: 2 <= k <= {kmax}"
    for k in range(2, kmax + 1):
        got = decompose_letters(ring, (u,) * (k - 1), (u,))
        if got != {(u,) * k: 1, (u,) * (k - 1): 1, (u,) * (k - 2): 1}:
            return _fail(claim, text, {"k": k}, {"k_max": kmax})
    return VerificationItem(claim, text, True, None, {"k_max": kmax})


def fusion_oracles(
    ring: BaseRing,
    maxlen: int = DEFAULT_ORACLE_MAXLEN,
    label_budget: int | None = DEFAULT_LABEL_BUDGET,
    positivity_maxlen: int = DEFAULT_POSITIVITY_MAXLEN,
) -> VerificationReport:
    words = _universe(ring, maxlen, label_budget)
    text = _universe_text(ring, maxlen, label_budget)
    pos_words = _universe(ring, positivity_maxlen, label_budget)
    pos_text = _universe_text(ring, positivity_maxlen, label_budget)
    report = VerificationReport()
    report.add(check_involution(ring, words, text))
    report.add(check_unit_law(ring, words, text))
    report.add(check_frobenius(ring, words, text))
    report.add(check_conjugation(ring, words, text))
    report.add(check_associativity(ring, words, text))
    report.add(check_dimensions(ring, words, text))
    report.add(check_degree(ring, words, text))
    report.add(check_positivity(ring, pos_words, pos_text))
    report.add(check_sn_recovery(ring))
    return report


@dataclass
class SweepResult:
    ring: str
    sections: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections.values())

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "passed": self.ok,
            "sections": {k: v.to_dict() for k, v in self.sections.items()},
            "notes": self.notes,
        }


def default_alpha(ring: BaseRing) -> int | None:
    if ring.is_finite and ring.size < 2:
        return None
    return 1 if ring.unit_index == 0 else 0


def run_sweep(
    ring: BaseRing,
    alpha=None,
    maxlen: int = DEFAULT_MAXLEN,
    label_budget: int | None = DEFAULT_LABEL_BUDGET,
    oracle_maxlen: int = DEFAULT_ORACLE_MAXLEN,
    positivity_maxlen: int = DEFAULT_POSITIVITY_MAXLEN,
) -> SweepResult:
    """Ring validation, fusion oracles, both lemma verifiers and the Powers hypotheses."""
    result = SweepResult(ring=ring.name)
    result.sections["ring"] = validate_ring(ring)
    result.sections["fusion"] = fusion_oracles(ring, oracle_maxlen, label_budget, positivity_maxlen)
    if alpha is None:
        alpha = default_alpha(ring)
    if alpha is None:
        result.notes.append("single-label ring: lemma verifiers and Powers hypotheses do not apply")
        return result
    result.sections["stability"] = verify_stability(ring, alpha, maxlen, label_budget)
    result.sections["fullness"] = verify_fullness_lemma(ring, alpha, maxlen, label_budget)
    result.sections["hypotheses"] = check_hypotheses(ring, alpha, maxlen, label_budget)
    return result
