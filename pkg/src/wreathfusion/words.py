"""Words over the labels of a base ring.

Words index the irreducibles of the free wreath product.  They are
immutable, store label indices, and remember the ring they live over so
that mixing rings is caught early.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .rings import BaseRing, LabelLike, UnknownLabelError


class MixedRingsError(ValueError):
    pass


class WordSyntaxError(ValueError):
    pass


class Word:
    __slots__ = ("ring", "letters", "_hash")

    def __init__(self, ring: BaseRing, letters: Iterable[LabelLike] = ()):
        idx = tuple(ring.index_of(a) for a in letters)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "letters", idx)
        object.__setattr__(self, "_hash", hash((id(ring), idx)))

    @classmethod
    def _raw(cls, ring: BaseRing, letters: tuple) -> "Word":
        # letters are trusted label indices
        w = object.__new__(cls)
        object.__setattr__(w, "ring", ring)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "_hash", hash((id(ring), letters)))
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self):
        return (self.ring._label(i) for i in self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word._raw(self.ring, self.letters[i])
        return self.ring._label(self.letters[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.ring is other.ring and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (len(self.letters), self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word{format_word(self)}"


def _same_ring(*words: Word) -> BaseRing:
    ring = words[0].ring
    for w in words[1:]:
        if w.ring is not ring:
            raise MixedRingsError("words belong to different rings")
    return ring


def empty(ring: BaseRing) -> Word:
    return Word._raw(ring, ())


def word(ring: BaseRing, *letters: LabelLike) -> Word:
    return Word(ring, letters)


def ones(ring: BaseRing, k: int) -> Word:
    """The word made of ``k`` unit letters; ``ones(ring, 0)`` is the empty word."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Word._raw(ring, (ring.unit_index,) * k)


def concat(x: Word, y: Word) -> Word:
    ring = _same_ring(x, y)
    return Word._raw(ring, x.letters + y.letters)


def involute_letters(ring: BaseRing, letters: tuple) -> tuple:
    d = ring._dual
    return tuple(d(a) for a in reversed(letters))


def involute(x: Word) -> Word:
    """Reverse the word and dualize every letter."""
    return Word._raw(x.ring, involute_letters(x.ring, x.letters))


@dataclass(frozen=True)
class WordClass:
    E1: bool
    E2: bool
    E3: bool
    S: bool
    G1: bool
    G2: bool

    def names(self) -> list[str]:
        return [n for n in CLASS_NAMES if getattr(self, n.replace("_", ""))]

    def to_dict(self) -> dict:
        return {n: getattr(self, n.replace("_", "")) for n in CLASS_NAMES}


CLASS_NAMES = ("E_1", "E_2", "E_3", "S", "G_1", "G_2")


def classify_letters(unit: int, letters: Sequence[int]) -> WordClass:
    if not letters:
        return WordClass(E1=True, E2=True, E3=False, S=False, G1=False, G2=False)
    starts_unit = letters[0] == unit
    only_unit = all(a == unit for a in letters)
    g1 = not starts_unit
    return WordClass(
        E1=starts_unit,
        E2=only_unit,
        E3=starts_unit and not only_unit,
        S=not only_unit,
        G1=g1,
        G2=g1 and letters[-1] != unit,
    )


def classify(x: Word) -> WordClass:
    return classify_letters(x.ring.unit_index, x.letters)


def normalize_class(name: str) -> str:
    key = name.strip().upper().replace("_", "")
    for n in CLASS_NAMES:
        if n.replace("_", "") == key:
            return n
    raise ValueError(f"unknown word class {name!r}; choose from {', '.join(CLASS_NAMES)}")


def in_class(unit: int, letters: Sequence[int], name: str) -> bool:
    c = classify_letters(unit, letters)
    return getattr(c, normalize_class(name).replace("_", ""))


# ----------------------------------------------------------------------
# text syntax: "(a,1,b)", "()" for the empty word, "1" always means the unit


def parse_word(ring: BaseRing, text: str) -> Word:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise WordSyntaxError(f"word {text!r} must be enclosed in parentheses")
    body = s[1:-1].strip()
    if not body:
        return empty(ring)
    letters = []
    for tok in body.split(","):
        tok = tok.strip()
        if not tok:
            raise WordSyntaxError(f"empty letter in {text!r}")
        if tok == "1":
            letters.append(ring.unit_index)
            continue
        try:
            letters.append(ring.index_of(tok))
        except UnknownLabelError as exc:
            raise WordSyntaxError(f"unknown label {tok!r} in {text!r}") from exc
    return Word._raw(ring, tuple(letters))


def parse_words(ring: BaseRing, text: str) -> list[Word]:
    """Parse a ``;``-separated list of words."""
    return [parse_word(ring, part) for part in text.split(";") if part.strip()]


def format_word(x: Word) -> str:
    return "(" + ",".join(x.ring._label(i).id for i in x.letters) + ")"
