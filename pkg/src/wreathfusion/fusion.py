"""Tensor products of irreducibles of the free wreath product.

``decompose`` implements the word fusion rule: for every split
``x = (u, t)``, ``y = (t̄, v)`` contribute the concatenation ``(u, v)`` once
and, when both ``u`` and ``v`` are nonempty, the fused words obtained by
replacing the junction letters with each ``γ ⊂ last(u) ⊗ first(v)``.
"""

from __future__ import annotations

import threading

from .poly import DimPoly
from .rings import BaseRing
from .words import Word, _same_ring, empty


def decompose_letters(ring: BaseRing, xs: tuple, ys: tuple) -> dict:
    """Core rule on raw letter tuples; returns ``{letters: multiplicity}``."""
    out: dict = {}
    dual = ring._dual
    lx, ly = len(xs), len(ys)
    for m in range(min(lx, ly) + 1):
        if m:
            # prefix of y must be the involute of the length-m suffix of x
            ok = True
            for i in range(m):
                if ys[i] != dual(xs[lx - 1 - i]):
                    ok = False
                    break
            if not ok:
                continue
        u = xs[: lx - m]
        v = ys[m:]
        key = u + v
        out[key] = out.get(key, 0) + 1
        if u and v:
            head, tail = u[:-1], v[1:]
            for g, c in ring._fuse(u[-1], v[0]):
                key = head + (g,) + tail
                out[key] = out.get(key, 0) + c
    return out


def _order(terms: dict) -> dict:
    return {k: terms[k] for k in sorted(terms, key=lambda t: (len(t), t))}


class Decomposition:
    """Multiset of words with positive multiplicities, canonically ordered."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: BaseRing, letter_terms: dict):
        self.ring = ring
        self._terms = _order({k: v for k, v in letter_terms.items() if v > 0})

    def items(self):
        return [(Word._raw(self.ring, k), v) for k, v in self._terms.items()]

    def words(self) -> list[Word]:
        return [Word._raw(self.ring, k) for k in self._terms]

    support = words

    def __getitem__(self, w: Word) -> int:
        return self._terms.get(w.letters, 0)

    def __contains__(self, w: Word) -> bool:
        return w.letters in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.words())

    def total(self) -> int:
        return sum(self._terms.values())

    def as_letter_dict(self) -> dict:
        return dict(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Decomposition):
            return self.ring is other.ring and self._terms == other._terms
        if isinstance(other, dict):
            return self._terms == {w.letters: m for w, m in other.items() if m}
        return NotImplemented

    def to_json(self) -> dict:
        return {"terms": [{"word": str(w), "mult": m} for w, m in self.items()]}

    def __repr__(self) -> str:
        inner = ", ".join(f"{w}: {m}" for w, m in self.items())
        return "{" + inner + "}"


def decompose(ring: BaseRing, x: Word, y: Word) -> Decomposition:
    if x.ring is not ring or y.ring is not ring:
        _same_ring(x, y, empty(ring))
    return Decomposition(ring, decompose_letters(ring, x.letters, y.letters))


def mult_of(ring: BaseRing, x: Word, y: Word, z: Word) -> int:
    _same_ring(x, y, z, empty(ring))
    return decompose_letters(ring, x.letters, y.letters).get(z.letters, 0)


# ----------------------------------------------------------------------
# dimensions

_N = DimPoly.n()


class _DimCache:
    """Per-ring memo of dimension polynomials keyed by letter tuple."""

    def __init__(self):
        self.table: dict = {}
        self.lock = threading.Lock()


_caches_lock = threading.Lock()


def _cache_for(ring: BaseRing) -> _DimCache:
    cache = getattr(ring, "_wf_dim_cache", None)
    if cache is None:
        with _caches_lock:
            cache = getattr(ring, "_wf_dim_cache", None)
            if cache is None:
                cache = _DimCache()
                ring._wf_dim_cache = cache
    return cache


def _dimpoly_letters(ring: BaseRing, letters: tuple, cache: _DimCache) -> DimPoly:
    hit = cache.table.get(letters)
    if hit is not None:
        return hit
    if not letters:
        result = DimPoly.const(1)
    elif len(letters) == 1:
        a = letters[0]
        result = _N * ring._dim(a) - (1 if a == ring.unit_index else 0)
    else:
        head, last = letters[:-1], letters[-1:]
        # x appears exactly once in head ⊗ (last); every other summand is shorter or equal to head
        result = _dimpoly_letters(ring, head, cache) * _dimpoly_letters(ring, last, cache)
        for z, m in decompose_letters(ring, head, last).items():
            if z != letters:
                result = result - _dimpoly_letters(ring, z, cache) * m
    with cache.lock:
        # idempotent fill
        cache.table.setdefault(letters, result)
    return result


def dimpoly(ring: BaseRing, x: Word) -> DimPoly:
    """dim ω(x) as an integer polynomial in the wreath parameter n."""
    if x.ring is not ring:
        _same_ring(x, empty(ring))
    return _dimpoly_letters(ring, x.letters, _cache_for(ring))


def dim_at(ring: BaseRing, x: Word, N: int) -> int:
    if N < 1:
        raise ValueError("N must be at least 1")
    return dimpoly(ring, x)(N)
