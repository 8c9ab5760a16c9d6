"""Bookkeeping for the Powers-method simplicity argument.

Nothing here touches operator norms.  A certificate records the chain of
upper bounds ``C0 * (19/20)^i`` that each averaging step licenses, the
number of steps needed to get below the threshold, and the supports that
the conjugations produce, each checked to stay inside G_2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .fusion import decompose_letters
from .rings import BaseRing, LabelLike
from .sets import (
    DEFAULT_LABEL_BUDGET,
    DEFAULT_MAXLEN,
    PreconditionError,
    VerificationItem,
    VerificationReport,
    WordSet,
    _disjoint_item,
    _fmt,
    _key,
    _nonunit,
    _partition_item,
    _require_two_labels,
    _slice,
    _universe,
    _universe_text,
    find_conjugator,
    stability_words,
)
from .words import Word, classify_letters, format_word, involute_letters

CONTRACTION = Fraction(19, 20)
DEFAULT_THRESHOLD = Fraction(1, 4)
DEFAULT_MAX_SUPPORT = 100_000

Rational = Union[Fraction, int, str]


def as_fraction(value: Rational) -> Fraction:
    if isinstance(value, float):
        raise TypeError("pass rationals as Fraction, int or 'p/q' strings, not float")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {value!r}") from exc


def contraction_count(c0: Rational, threshold: Rational = DEFAULT_THRESHOLD) -> int:
    """Smallest m >= 0 with ``(19/20)^m * c0 < threshold``, in exact arithmetic."""
    c0 = as_fraction(c0)
    threshold = as_fraction(threshold)
    if c0 <= 0:
        raise ValueError("C0 must be positive")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    if c0 < threshold:
        return 0
    # float estimate, then settle the boundary exactly
    m = max(0, math.floor(math.log(threshold / c0) / math.log(CONTRACTION)) - 1)
    while CONTRACTION**m * c0 >= threshold:
        m += 1
    while m > 0 and CONTRACTION ** (m - 1) * c0 < threshold:
        m -= 1
    return m


def norm_bound_trace(c0: Rational, steps: int) -> list[Fraction]:
    c0 = as_fraction(c0)
    return [c0 * CONTRACTION**i for i in range(steps + 1)]


def check_hypotheses(
    ring: BaseRing,
    alpha: LabelLike,
    maxlen: int = DEFAULT_MAXLEN,
    label_budget: int | None = DEFAULT_LABEL_BUDGET,
) -> VerificationReport:
    """Partition M = E_1 ⊔ G_1 and disjointness of {x_t} ∘ G_1 on a slice."""
    a = _nonunit(ring, alpha)
    _require_two_labels(ring)
    universe = _universe(ring, maxlen, label_budget)
    text = _universe_text(ring, maxlen, label_budget)
    report = VerificationReport()
    report.add(_partition_item(ring, universe, "M = E_1 ⊔ G_1", text, ("E1", "G1")))
    report.add(_disjoint_item(
        ring, stability_words(ring, a), _slice(ring, universe, "G1"),
        "({x_t} ∘ G_1) ∩ ({x_s} ∘ G_1) = ∅ for t ≠ s", text,
    ))
    return report


@dataclass
class PowersCertificate:
    conjugator: Word
    k: int
    c0: Fraction
    threshold: Fraction
    hypothesis_report: VerificationReport
    norm_bound_trace: list[Fraction]
    iterations: int
    support_sizes: list[int]
    support_checks: VerificationReport
    truncated: bool
    support_sets: list[WordSet] | None = None
    max_support: int = DEFAULT_MAX_SUPPORT
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hypothesis_report.ok and self.support_checks.ok and not self.truncated

    def to_dict(self) -> dict:
        d = {
            "passed": self.ok,
            "conjugator": format_word(self.conjugator),
            "k": self.k,
            "c0": str(self.c0),
            "threshold": str(self.threshold),
            "contraction": str(CONTRACTION),
            "iterations": self.iterations,
            "norm_bound_trace": [str(b) for b in self.norm_bound_trace],
            "hypothesis_report": self.hypothesis_report.to_dict(),
            "support_checks": self.support_checks.to_dict(),
            "support_sizes": self.support_sizes,
            "max_support": self.max_support,
            "truncated": self.truncated,
        }
        if self.support_sets is not None:
            d["support_sets"] = [s.to_json() for s in self.support_sets]
        if self.notes:
            d["notes"] = self.notes
        return d


def _step(ring, xs, xbars, current: list[tuple], cap: int):
    """One averaging step; returns (new support, hit_cap)."""
    out: set = set()
    for w in current:
        for x, xbar in zip(xs, xbars):
            for left in decompose_letters(ring, x, w):
                out.update(decompose_letters(ring, left, xbar))
        if len(out) > cap:
            return out, True
    return out, False


def build_certificate(
    ring: BaseRing,
    support: WordSet,
    alpha: LabelLike,
    c0: Rational,
    max_support: int = DEFAULT_MAX_SUPPORT,
    trace_sets: bool = False,
    threshold: Rational = DEFAULT_THRESHOLD,
    hypothesis_maxlen: int = DEFAULT_MAXLEN,
    label_budget: int | None = DEFAULT_LABEL_BUDGET,
) -> PowersCertificate:
    a = _nonunit(ring, alpha)
    c0 = as_fraction(c0)
    threshold = as_fraction(threshold)
    if c0 <= 0:
        raise ValueError("C0 must be positive")
    if max_support < 1:
        raise ValueError("max_support must be positive")
    if not len(support):
        raise PreconditionError("support must be nonempty")
    u = ring.unit_index
    for t in support.letter_tuples():
        if not classify_letters(u, t).S:
            raise PreconditionError(f"support not contained in S: {_fmt(ring, t)}")

    hyp = check_hypotheses(ring, a, hypothesis_maxlen, label_budget)
    x, conj_report = find_conjugator(ring, support, a)
    m = contraction_count(c0, threshold)
    bounds = norm_bound_trace(c0, m)

    checks = VerificationReport()
    xl = x.letters
    s0 = set()
    for w in support.letter_tuples():
        for left in decompose_letters(ring, xl, w):
            s0.update(decompose_letters(ring, left, involute_letters(ring, xl)))
    current = sorted(s0, key=_key)
    item = conj_report.items[0]
    checks.add(VerificationItem("S_0 = {x} ∘ supp ∘ {x̄} ⊆ G_2", item.universe, item.passed,
                                item.witness, {"size": len(current)}))
    sizes = [len(current)]
    sets = [WordSet.from_letters(ring, current)] if trace_sets else None

    xs = stability_words(ring, a)
    xbars = [involute_letters(ring, t) for t in xs]
    truncated = False
    notes = []
    for i in range(1, m + 1):
        nxt, hit = _step(ring, xs, xbars, current, max_support)
        if hit:
            truncated = True
            notes.append(f"step {i} exceeded max_support={max_support}; trace stops at S_{i - 1}")
            break
        current = sorted(nxt, key=_key)
        bad = next((t for t in current if not classify_letters(u, t).G2), None)
        checks.add(VerificationItem(
            f"S_{i} ⊆ G_2", f"{ring.name}: step {i} support", bad is None,
            None if bad is None else {"word": _fmt(ring, bad)}, {"size": len(current)},
        ))
        sizes.append(len(current))
        if sets is not None:
            sets.append(WordSet.from_letters(ring, current))

    return PowersCertificate(
        conjugator=x,
        k=len(xl) - 1,
        c0=c0,
        threshold=threshold,
        hypothesis_report=hyp,
        norm_bound_trace=bounds,
        iterations=m,
        support_sizes=sizes,
        support_checks=checks,
        truncated=truncated,
        support_sets=sets,
        max_support=max_support,
        notes=notes,
    )
