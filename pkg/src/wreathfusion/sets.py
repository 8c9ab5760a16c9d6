"""Finite word-set algebra and the bounded lemma verifiers.

The word classes E_1, E_2, E_3, S, G_1, G_2 are infinite; verifiers work on
their *slices*, i.e. the words of length at most ``maxlen`` whose letters
come from the first ``label_budget`` labels.
"""

from __future__ import annotations

import itertools
from collections.abc import Set
from dataclasses import dataclass, field
from typing import Iterable

from ._parallel import chunked_map
from .fusion import decompose_letters
from .rings import BaseRing, LabelLike, iter_labels
from .words import (
    Word,
    MixedRingsError,
    classify_letters,
    format_word,
    involute_letters,
    normalize_class,
)

DEFAULT_MAXLEN = 4
DEFAULT_LABEL_BUDGET = 2


class PreconditionError(ValueError):
    pass


def _key(t: tuple) -> tuple:
    return (len(t), t)


class WordSet(Set):
    """Immutable set of words over one ring, iterated in canonical order."""

    __slots__ = ("ring", "_letters", "_order")

    def __init__(self, ring: BaseRing, words: Iterable = ()):
        letters = set()
        for w in words:
            if isinstance(w, Word):
                if w.ring is not ring:
                    raise MixedRingsError("word from a different ring")
                letters.add(w.letters)
            else:
                letters.add(tuple(w))
        self.ring = ring
        self._letters = frozenset(letters)
        self._order = None

    @classmethod
    def from_letters(cls, ring: BaseRing, letters: Iterable[tuple]) -> "WordSet":
        ws = cls(ring)
        ws._letters = frozenset(letters)
        return ws

    def _from_iterable(self, it):
        return WordSet(self.ring, it)

    def letter_tuples(self) -> list[tuple]:
        if self._order is None:
            self._order = sorted(self._letters, key=_key)
        return self._order

    def __contains__(self, w) -> bool:
        if isinstance(w, Word):
            return w.ring is self.ring and w.letters in self._letters
        return tuple(w) in self._letters

    def __iter__(self):
        return (Word._raw(self.ring, t) for t in self.letter_tuples())

    def __len__(self) -> int:
        return len(self._letters)

    def __hash__(self):
        return self._hash()

    def __eq__(self, other):
        if isinstance(other, WordSet):
            return self.ring is other.ring and self._letters == other._letters
        return Set.__eq__(self, other)

    def to_json(self) -> list[str]:
        return [format_word(w) for w in self]

    def __repr__(self) -> str:
        return "{" + ", ".join(self.to_json()) + "}"


def _check_ring(ring: BaseRing, *sets: WordSet) -> None:
    for s in sets:
        if s.ring is not ring:
            raise MixedRingsError("word set belongs to a different ring")


def circ_letters(ring: BaseRing, A: Iterable[tuple], B: Iterable[tuple]) -> set:
    B = list(B)
    out: set = set()
    for x in A:
        for y in B:
            out.update(decompose_letters(ring, x, y))
    return out


def circ(ring: BaseRing, A: WordSet, B: WordSet) -> WordSet:
    """All words z with ω(z) a summand of ω(x) ⊗ ω(y) for some x in A, y in B."""
    _check_ring(ring, A, B)
    return WordSet.from_letters(ring, circ_letters(ring, A.letter_tuples(), B.letter_tuples()))


def conj_set(A: WordSet) -> WordSet:
    return WordSet.from_letters(A.ring, (involute_letters(A.ring, t) for t in A.letter_tuples()))


def _universe(ring: BaseRing, maxlen: int, label_budget: int | None) -> list[tuple]:
    if maxlen < 0:
        raise ValueError("maxlen must be nonnegative")
    alphabet = list(iter_labels(ring, label_budget))
    return [t for k in range(maxlen + 1) for t in itertools.product(alphabet, repeat=k)]


def enumerate_class(ring: BaseRing, cls: str, maxlen: int, label_budget: int | None = None) -> WordSet:
    """The slice of a word class: members of length <= maxlen over the first labels."""
    attr = normalize_class(cls).replace("_", "")
    if label_budget is None and not ring.is_finite:
        raise PreconditionError(f"{ring.name} is infinite; a label budget is required")
    u = ring.unit_index
    return WordSet.from_letters(
        ring, (t for t in _universe(ring, maxlen, label_budget) if getattr(classify_letters(u, t), attr))
    )


def _slice(ring, universe, attr):
    u = ring.unit_index
    return [t for t in universe if getattr(classify_letters(u, t), attr)]


def _universe_text(ring: BaseRing, maxlen: int, label_budget: int | None) -> str:
    n = len(list(iter_labels(ring, label_budget)))
    return f"{ring.name}: words of length <= {maxlen} over the first {n} labels"


# ----------------------------------------------------------------------
# reports


@dataclass
class VerificationItem:
    claim: str
    universe: str
    passed: bool
    witness: dict | None = None
    counts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"claim": self.claim, "universe": self.universe, "passed": self.passed, "counts": self.counts}
        if not self.passed:
            d["witness"] = self.witness
        return d


@dataclass
class VerificationReport:
    items: list[VerificationItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.passed for i in self.items)

    def add(self, item: VerificationItem) -> None:
        self.items.append(item)

    def extend(self, other: "VerificationReport") -> None:
        self.items.extend(other.items)

    def failures(self) -> list[VerificationItem]:
        return [i for i in self.items if not i.passed]

    def to_dict(self) -> dict:
        return {"passed": self.ok, "items": [i.to_dict() for i in self.items]}


def _fmt(ring: BaseRing, t: tuple) -> str:
    return "(" + ",".join(ring._label(i).id for i in t) + ")"


def _nonunit(ring: BaseRing, alpha: LabelLike) -> int:
    a = ring.index_of(alpha)
    if a == ring.unit_index:
        raise PreconditionError("alpha must differ from the unit label")
    return a


def _require_two_labels(ring: BaseRing) -> None:
    if ring.is_finite and ring.size < 2:
        raise PreconditionError("the base ring needs at least two labels (|Irr(G)| >= 2)")


def stability_words(ring: BaseRing, alpha: LabelLike) -> list[tuple]:
    """Letter tuples of x_1 = (α,1), x_2 = (α,1,1,1), x_3 = (α,1^5)."""
    a = _nonunit(ring, alpha)
    u = ring.unit_index
    return [(a,) + (u,) * k for k in (1, 3, 5)]


def _conjugate_into(ring, x: tuple, words: Iterable[tuple]) -> set:
    """``{x} ∘ words ∘ {x̄}`` on letter tuples."""
    xbar = involute_letters(ring, x)
    left = circ_letters(ring, [x], words)
    return circ_letters(ring, left, [xbar])


def _first_outside(ring, words: Iterable[tuple], attr: str):
    u = ring.unit_index
    for t in sorted(words, key=_key):
        if not getattr(classify_letters(u, t), attr):
            return t
    return None


def _partition_item(ring, universe, claim, universe_text, parts, whole=None) -> VerificationItem:
    """Every word lies in exactly one of ``parts`` (within ``whole`` when given)."""
    u = ring.unit_index
    for t in universe:
        c = classify_letters(u, t)
        hits = sum(getattr(c, p) for p in parts)
        inside = True if whole is None else getattr(c, whole)
        if hits != (1 if inside else 0):
            return VerificationItem(
                claim, universe_text, False,
                {"word": _fmt(ring, t), "classes": c.names()}, {"words": len(universe)},
            )
    return VerificationItem(claim, universe_text, True, None, {"words": len(universe)})


def _disjoint_item(ring, xs: list[tuple], slice_: list[tuple], claim, universe_text) -> VerificationItem:
    images = [circ_letters(ring, [x], slice_) for x in xs]
    counts = {"images": [len(im) for im in images], "slice": len(slice_)}
    for s, t in itertools.combinations(range(len(xs)), 2):
        common = images[s] & images[t]
        if common:
            z = min(common, key=_key)
            return VerificationItem(
                claim, universe_text, False,
                {"pair": [_fmt(ring, xs[s]), _fmt(ring, xs[t])], "word": _fmt(ring, z)}, counts,
            )
    return VerificationItem(claim, universe_text, True, None, counts)


def _g2_e1_item(ring, g2: list[tuple], e1: list[tuple], universe_text) -> VerificationItem:
    claim = "(G_2 ∘ E_1) ∩ E_1 = ∅"
    u = ring.unit_index

    def work(chunk):
        # counts must not depend on chunking, so no early exit
        produced = 0
        first = None
        for x in chunk:
            for y in e1:
                for z in sorted(decompose_letters(ring, x, y), key=_key):
                    produced += 1
                    if first is None and (not z or z[0] == u):
                        first = (x, y, z)
        return produced, first

    results = chunked_map(work, g2)
    produced = sum(r[0] for r in results)
    counts = {"pairs": len(g2) * len(e1), "summands": produced}
    for _, bad in results:
        if bad is not None:
            x, y, z = bad
            return VerificationItem(
                claim, universe_text, False,
                {"x": _fmt(ring, x), "y": _fmt(ring, y), "word": _fmt(ring, z)}, counts,
            )
    return VerificationItem(claim, universe_text, True, None, counts)


def _containment_item(ring, xs, slice_, attr, claim, universe_text) -> VerificationItem:
    total = 0
    for x in xs:
        image = _conjugate_into(ring, x, slice_)
        total += len(image)
        bad = _first_outside(ring, image, attr)
        if bad is not None:
            return VerificationItem(
                claim, universe_text, False,
                {"x": _fmt(ring, x), "word": _fmt(ring, bad)}, {"words": total},
            )
    return VerificationItem(claim, universe_text, True, None, {"words": total, "slice": len(slice_)})


def verify_stability(
    ring: BaseRing,
    alpha: LabelLike,
    maxlen: int = DEFAULT_MAXLEN,
    label_budget: int | None = DEFAULT_LABEL_BUDGET,
) -> VerificationReport:
    """Check parts (1)-(4) of the stability lemma on class slices."""
    a = _nonunit(ring, alpha)
    _require_two_labels(ring)
    universe = _universe(ring, maxlen, label_budget)
    text = _universe_text(ring, maxlen, label_budget)
    xs = stability_words(ring, a)
    g1 = _slice(ring, universe, "G1")
    g2 = _slice(ring, universe, "G2")
    e1 = _slice(ring, universe, "E1")

    report = VerificationReport()
    report.add(_partition_item(ring, universe, "S = E_3 ⊔ G_1", text, ("E3", "G1"), whole="S"))
    report.add(_g2_e1_item(ring, g2, e1, text))
    report.add(_disjoint_item(ring, xs, g1, "({x_t} ∘ G_1) ∩ ({x_s} ∘ G_1) = ∅ for t ≠ s", text))
    report.add(_containment_item(ring, xs, g2, "G2", "⋃_t {x_t} ∘ G_2 ∘ {x̄_t} ⊆ G_2", text))
    return report


def find_conjugator(ring: BaseRing, G: WordSet, alpha: LabelLike) -> tuple[Word, VerificationReport]:
    """x = (α, 1^k) with k = max length in G plus one, with a containment check."""
    a = _nonunit(ring, alpha)
    _check_ring(ring, G)
    if not len(G):
        raise PreconditionError("support set must be nonempty")
    u = ring.unit_index
    for t in G.letter_tuples():
        if not classify_letters(u, t).S:
            raise PreconditionError(f"word {_fmt(ring, t)} is not in S")
    k = max(len(t) for t in G.letter_tuples()) + 1
    x = (a,) + (u,) * k
    text = f"{ring.name}: support set of {len(G)} words"
    report = VerificationReport()
    report.add(_containment_item(ring, [x], G.letter_tuples(), "G2", "{x} ∘ G ∘ {x̄} ⊆ G_2", text))
    return Word._raw(ring, x), report


def verify_fullness_lemma(
    ring: BaseRing,
    alpha: LabelLike,
    maxlen: int = DEFAULT_MAXLEN,
    label_budget: int | None = DEFAULT_LABEL_BUDGET,
) -> VerificationReport:
    """Check the three word-set claims used for fullness on class slices."""
    a = _nonunit(ring, alpha)
    _require_two_labels(ring)
    universe = _universe(ring, maxlen, label_budget)
    text = _universe_text(ring, maxlen, label_budget)
    e3 = _slice(ring, universe, "E3")
    g1 = _slice(ring, universe, "G1")
    u = ring.unit_index

    report = VerificationReport()
    report.add(_containment_item(ring, [(a,)], e3, "G1", "{(α)} ∘ E_3 ∘ {(ᾱ)} ⊆ G_1", text))

    images = {}
    failed = None
    total = 0
    for i in (2, 4):
        x = (u,) * i
        images[i] = _conjugate_into(ring, x, g1)  # 1^i is self-conjugate
        total += len(images[i])
        bad = _first_outside(ring, images[i], "E3")
        if bad is not None and failed is None:
            failed = {"i": i, "word": _fmt(ring, bad)}
    report.add(VerificationItem(
        "{1^i} ∘ G_1 ∘ {1^i} ⊆ E_3 for i = 2, 4", text, failed is None, failed,
        {"words": total, "slice": len(g1)},
    ))

    common = images[2] & images[4]
    witness = {"word": _fmt(ring, min(common, key=_key))} if common else None
    report.add(VerificationItem(
        "({1^2} ∘ G_1 ∘ {1^2}) ∩ ({1^4} ∘ G_1 ∘ {1^4}) = ∅", text, not common, witness,
        {"i=2": len(images[2]), "i=4": len(images[4])},
    ))
    return report
