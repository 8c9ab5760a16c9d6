"""Fusion rings of the base quantum group.

A ring is a set of labels (irreducible classes) with a unit, an involutive
dual, positive integer dimensions and integer structure constants
``N_{ab}^c``.  Two storage strategies are provided: :class:`TableRing` for
finite rings given by an explicit table, and :class:`IntervalRing` for the
two infinite built-in families whose fusion follows an interval rule.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence, Union


class RingError(Exception):
    """Base class for errors raised while building a ring."""


class RingParseError(RingError):
    """The ring document is malformed."""


class RingValidationError(RingError):
    """A ring invariant does not hold."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


class UnknownLabelError(KeyError):
    pass


@dataclass(frozen=True)
class Label:
    id: str
    index: int

    def __str__(self) -> str:
        return self.id


LabelLike = Union[Label, int, str]
FusionTerms = tuple  # tuple[tuple[int, int], ...]: (label index, multiplicity)


class BaseRing:
    """Common interface of base fusion rings.

    Subclasses implement the index-level primitives ``_fuse``, ``_dual``,
    ``_dim`` and ``_label``.  Everything downstream works with integer label
    indices; :class:`Label` objects are only materialised at the edges.
    """

    name: str = "ring"
    unit_index: int = 0

    # -- primitives -----------------------------------------------------
    def _label(self, index: int) -> Label:
        raise NotImplementedError

    def _dual(self, index: int) -> int:
        raise NotImplementedError

    def _dim(self, index: int) -> int:
        raise NotImplementedError

    def _fuse(self, a: int, b: int) -> FusionTerms:
        raise NotImplementedError

    def _lookup_id(self, ident: str) -> int:
        raise NotImplementedError

    @property
    def size(self) -> int | None:
        """Number of labels, or ``None`` for an infinite family."""
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    # -- public API -----------------------------------------------------
    @property
    def unit(self) -> Label:
        return self._label(self.unit_index)

    def index_of(self, key: LabelLike) -> int:
        if isinstance(key, Label):
            if self._label(key.index) != key:
                raise UnknownLabelError(f"label {key!r} does not belong to {self.name}")
            return key.index
        if isinstance(key, bool):
            raise UnknownLabelError(repr(key))
        if isinstance(key, int):
            if key < 0 or (self.size is not None and key >= self.size):
                raise UnknownLabelError(f"label index {key} out of range for {self.name}")
            return key
        if isinstance(key, str):
            return self._lookup_id(key)
        raise UnknownLabelError(repr(key))

    def label(self, key: LabelLike) -> Label:
        return self._label(self.index_of(key))

    def labels(self, limit: int | None = None) -> list[Label]:
        """The first ``limit`` labels in canonical order (all, for finite rings)."""
        if limit is None:
            if self.size is None:
                raise ValueError(f"{self.name} has infinitely many labels; pass a limit")
            limit = self.size
        if self.size is not None:
            limit = min(limit, self.size)
        return [self._label(i) for i in range(limit)]

    def dual(self, a: LabelLike) -> Label:
        return self._label(self._dual(self.index_of(a)))

    def dim(self, a: LabelLike) -> int:
        return self._dim(self.index_of(a))

    def fuse(self, a: LabelLike, b: LabelLike) -> list[tuple[Label, int]]:
        """Structure constants of ``a ⊗ b`` ordered by label index."""
        return [(self._label(c), m) for c, m in self._fuse(self.index_of(a), self.index_of(b))]

    def multiplicity(self, a: LabelLike, b: LabelLike, c: LabelLike) -> int:
        ci = self.index_of(c)
        for g, m in self._fuse(self.index_of(a), self.index_of(b)):
            if g == ci:
                return m
        return 0

    def __repr__(self) -> str:
        size = "inf" if self.size is None else self.size
        return f"<{type(self).__name__} {self.name} labels={size}>"


def base_fuse(ring: BaseRing, a: LabelLike, b: LabelLike) -> list[tuple[Label, int]]:
    return ring.fuse(a, b)


class TableRing(BaseRing):
    """A finite ring given by explicit tables over label indices."""

    def __init__(
        self,
        ids: Sequence[str],
        unit: int,
        dual: Sequence[int],
        dims: Sequence[int],
        fusion: Mapping[tuple[int, int], Mapping[int, int]],
        name: str = "ring",
    ):
        if len(set(ids)) != len(ids):
            raise RingParseError("label ids must be unique")
        self.name = name
        self.unit_index = unit
        self._labels = tuple(Label(s, i) for i, s in enumerate(ids))
        self._ids = {s: i for i, s in enumerate(ids)}
        self._duals = tuple(dual)
        self._dims = tuple(dims)
        self._table = {
            pair: tuple(sorted((c, m) for c, m in terms.items() if m))
            for pair, terms in fusion.items()
        }

    @property
    def size(self) -> int:
        return len(self._labels)

    def _label(self, index: int) -> Label:
        return self._labels[index]

    def _lookup_id(self, ident: str) -> int:
        try:
            return self._ids[ident]
        except KeyError:
            raise UnknownLabelError(f"unknown label {ident!r} in {self.name}") from None

    def _dual(self, index: int) -> int:
        return self._duals[index]

    def _dim(self, index: int) -> int:
        return self._dims[index]

    def _fuse(self, a: int, b: int) -> FusionTerms:
        return self._table[a, b]

    def to_document(self) -> dict:
        ids = [lab.id for lab in self._labels]
        return {
            "labels": ids,
            "unit": ids[self.unit_index],
            "dual": {ids[i]: ids[self._duals[i]] for i in range(self.size)},
            "dims": {ids[i]: self._dims[i] for i in range(self.size)},
            "fusion": {
                f"{ids[a]}*{ids[b]}": {ids[c]: m for c, m in self._table[a, b]}
                for a in range(self.size)
                for b in range(self.size)
            },
        }


class IntervalRing(BaseRing):
    """Infinite family with labels 0, 1, 2, ... and interval fusion.

    ``a ⊗ b = ⊕ c`` for ``c = |a-b|, |a-b|+step, ..., a+b``.  Step 1 has
    dimensions ``1, M-1, (M-2)d_k - d_{k-1}``; step 2 has ``1, M, M d_k - d_{k-1}``.
    Labels are named ``v0, v1, ...``.
    """

    def __init__(self, step: int, param: int):
        if step not in (1, 2):
            raise ValueError("step must be 1 or 2")
        if param < 4:
            raise RingError(f"interval families need M >= 4, got {param}")
        self.step = step
        self.param = param
        self.name = f"interval-step{step}(M={param})"
        self.unit_index = 0
        # per-instance cache; observationally pure
        self._dim_cached = lru_cache(maxsize=None)(self._dim_uncached)

    @property
    def size(self) -> None:
        return None

    def _label(self, index: int) -> Label:
        return Label(f"v{index}", index)

    def _lookup_id(self, ident: str) -> int:
        if ident.startswith("v") and ident[1:].isdigit():
            return int(ident[1:])
        raise UnknownLabelError(f"unknown label {ident!r} in {self.name}")

    def _dual(self, index: int) -> int:
        return index

    def _dim_uncached(self, index: int) -> int:
        if self.step == 1:
            first, mult = self.param - 1, self.param - 2
        else:
            first, mult = self.param, self.param
        prev, cur = 1, first
        if index == 0:
            return 1
        for _ in range(index - 1):
            prev, cur = cur, mult * cur - prev
        return cur

    def _dim(self, index: int) -> int:
        return self._dim_cached(index)

    def _fuse(self, a: int, b: int) -> FusionTerms:
        return tuple((c, 1) for c in range(abs(a - b), a + b + 1, self.step))


# ----------------------------------------------------------------------
# validation


@dataclass
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    message: str = ""

    def to_dict(self) -> dict:
        d = {"check": self.name, "passed": self.passed}
        if not self.passed:
            d["witness"] = list(self.witness) if self.witness is not None else None
            d["message"] = self.message
        return d


@dataclass
class ValidationReport:
    ring: str
    universe: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "universe": self.universe,
            "passed": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }


_CHECK_MESSAGES = {
    "dual-involutive": "dual is not an involution",
    "unit-self-dual": "unit is not self-dual",
    "unit-dimension": "unit dimension is not 1",
    "dual-dimension": "dual changes the dimension",
    "unit-law": "unit law violated",
    "dimension-identity": "dimension identity violated",
    "frobenius-unit": "Frobenius at unit violated",
    "conjugation-symmetry": "conjugation symmetry violated",
    "associativity": "associativity violated",
}


def validate_ring(ring: BaseRing, bound: int = 6) -> ValidationReport:
    """Check every ring invariant and report a witness for each failure.

    Finite rings are checked exhaustively.  Infinite families are checked on
    their first ``bound`` labels (fusion outputs may leave that range).
    """
    n = ring.size if ring.is_finite else bound
    universe = "all labels" if ring.is_finite else f"first {n} labels"
    idx = range(n)
    u = ring.unit_index
    lab = ring._label
    found: dict[str, tuple | None] = {}
    detail: dict[str, str] = {}

    def fail(name, witness, msg=""):
        if name not in found:
            found[name] = witness
            detail[name] = msg

    for a in idx:
        if ring._dual(ring._dual(a)) != a:
            fail("dual-involutive", (lab(a).id,))
        if ring._dim(ring._dual(a)) != ring._dim(a):
            fail("dual-dimension", (lab(a).id,), f"{ring._dim(ring._dual(a))} != {ring._dim(a)}")
    if ring._dual(u) != u:
        fail("unit-self-dual", (lab(u).id,))
    if ring._dim(u) != 1:
        fail("unit-dimension", (lab(u).id,), f"{ring._dim(u)} != 1")

    for a in idx:
        if ring._fuse(u, a) != ((a, 1),):
            fail("unit-law", (lab(u).id, lab(a).id))
        if ring._fuse(a, u) != ((a, 1),):
            fail("unit-law", (lab(a).id, lab(u).id))

    for a, b in itertools.product(idx, repeat=2):
        terms = ring._fuse(a, b)
        lhs = ring._dim(a) * ring._dim(b)
        rhs = sum(m * ring._dim(c) for c, m in terms)
        if lhs != rhs:
            fail("dimension-identity", (lab(a).id, lab(b).id), f"{lhs} != {rhs}")
        to_unit = dict(terms).get(u, 0)
        expected = 1 if b == ring._dual(a) else 0
        if to_unit != expected:
            fail(
                "frobenius-unit",
                (lab(a).id, lab(b).id, lab(u).id),
                f"N = {to_unit}, expected {expected}",
            )
        mirrored = dict(ring._fuse(ring._dual(b), ring._dual(a)))
        for c, m in terms:
            if mirrored.get(ring._dual(c), 0) != m:
                fail("conjugation-symmetry", (lab(a).id, lab(b).id, lab(c).id))
                break
        else:
            if sum(mirrored.values()) != sum(m for _, m in terms):
                fail("conjugation-symmetry", (lab(a).id, lab(b).id))

    for a, b, c in itertools.product(idx, repeat=3):
        left: dict[int, int] = {}
        for d, m in ring._fuse(a, b):
            for e, k in ring._fuse(d, c):
                left[e] = left.get(e, 0) + m * k
        right: dict[int, int] = {}
        for d, m in ring._fuse(b, c):
            for e, k in ring._fuse(a, d):
                right[e] = right.get(e, 0) + m * k
        if left != right:
            fail("associativity", (lab(a).id, lab(b).id, lab(c).id))

    report = ValidationReport(ring=ring.name, universe=universe)
    for name, msg in _CHECK_MESSAGES.items():
        if name in found:
            text = msg + (f": {detail[name]}" if detail[name] else "")
            report.checks.append(Check(name, False, found[name], text))
        else:
            report.checks.append(Check(name, True))
    return report


def _ensure_valid(ring: BaseRing) -> BaseRing:
    report = validate_ring(ring)
    if not report.ok:
        first = report.failures()[0]
        raise RingValidationError(f"{first.message} at {first.witness}", report)
    return ring


# ----------------------------------------------------------------------
# loading


def ring_from_document(doc: Mapping, name: str = "ring") -> TableRing:
    """Build and validate a ring from the JSON ring format."""
    if not isinstance(doc, Mapping):
        raise RingParseError("ring document must be a JSON object")
    for key in ("labels", "unit", "dual", "dims", "fusion"):
        if key not in doc:
            raise RingParseError(f"missing key {key!r}")
    ids = doc["labels"]
    if not isinstance(ids, list) or not ids or not all(isinstance(s, str) for s in ids):
        raise RingParseError("'labels' must be a non-empty list of strings")
    for s in ids:
        if not s or any(ch in s for ch in "(),;* \t"):
            raise RingParseError(f"label id {s!r} contains reserved characters")
    if len(set(ids)) != len(ids):
        raise RingParseError("label ids must be unique")
    if "1" in ids and doc["unit"] != "1":
        raise RingParseError("the id '1' is reserved for the unit label")
    pos = {s: i for i, s in enumerate(ids)}

    def index(s, where):
        if s not in pos:
            raise RingParseError(f"unknown label {s!r} in {where}")
        return pos[s]

    unit = index(doc["unit"], "unit")
    dual_map, dims_map = doc["dual"], doc["dims"]
    if not isinstance(dual_map, Mapping) or not isinstance(dims_map, Mapping):
        raise RingParseError("'dual' and 'dims' must be objects")
    dual, dims = [], []
    for s in ids:
        if s not in dual_map:
            raise RingParseError(f"no dual given for {s!r}")
        if s not in dims_map:
            raise RingParseError(f"no dimension given for {s!r}")
        dual.append(index(dual_map[s], "dual"))
        d = dims_map[s]
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise RingParseError(f"dimension of {s!r} must be a positive integer")
        dims.append(d)
    for s in dual_map:
        index(s, "dual")
    for s in dims_map:
        index(s, "dims")

    raw = doc["fusion"]
    if not isinstance(raw, Mapping):
        raise RingParseError("'fusion' must be an object")
    fusion: dict[tuple[int, int], dict[int, int]] = {}
    for key, terms in raw.items():
        parts = key.split("*")
        if len(parts) != 2:
            raise RingParseError(f"fusion key {key!r} is not of the form 'a*b'")
        pair = (index(parts[0], "fusion key"), index(parts[1], "fusion key"))
        if pair in fusion:
            raise RingParseError(f"duplicate fusion entry {key!r}")
        if not isinstance(terms, Mapping):
            raise RingParseError(f"fusion entry {key!r} must be an object")
        entry = {}
        for c, m in terms.items():
            if not isinstance(m, int) or isinstance(m, bool) or m < 1:
                raise RingParseError(f"multiplicity of {c!r} in {key!r} must be a positive integer")
            entry[index(c, f"fusion entry {key!r}")] = m
        fusion[pair] = entry
    for a, b in itertools.product(range(len(ids)), repeat=2):
        if (a, b) not in fusion:
            raise RingParseError(f"fusion table has no entry for '{ids[a]}*{ids[b]}'")
    return _ensure_valid(TableRing(ids, unit, dual, dims, fusion, name=name))


def load_ring(source: Union[str, Path, Mapping]) -> TableRing:
    """Load a ring from a JSON file path, a JSON string, or a parsed document."""
    if isinstance(source, Mapping):
        return ring_from_document(source)
    path = Path(source) if not (isinstance(source, str) and source.lstrip().startswith("{")) else None
    try:
        if path is not None:
            text = path.read_text(encoding="utf-8")
            name = path.stem
        else:
            text, name = source, "ring"
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RingParseError(f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise RingParseError(str(exc)) from None
    return ring_from_document(doc, name=name)


# ----------------------------------------------------------------------
# Cayley tables and built-in families


@dataclass(frozen=True)
class CayleyTable:
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of elements[i]*elements[j]


def check_group(cayley: CayleyTable) -> list[str]:
    """Return the group axioms the table violates (empty when it is a group)."""
    n = len(cayley.elements)
    t = cayley.table
    problems = []
    if n == 0:
        return ["empty table"]
    if len(t) != n or any(len(row) != n for row in t):
        return ["table is not square"]
    if any(not (0 <= v < n) for row in t for v in row):
        return ["table is not closed"]
    ids = [e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))]
    if not ids:
        problems.append("no identity")
    else:
        e = ids[0]
        for a in range(n):
            if not any(t[a][b] == e and t[b][a] == e for b in range(n)):
                problems.append(f"{cayley.elements[a]} has no inverse")
                break
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            problems.append(
                f"not associative at ({cayley.elements[a]}, {cayley.elements[b]}, {cayley.elements[c]})"
            )
            break
    return problems


def cayley_from_document(doc: Mapping) -> CayleyTable:
    """Parse ``{"elements": [...], "table": [[...], ...]}`` (entries are element names)."""
    try:
        elements = tuple(doc["elements"])
        pos = {s: i for i, s in enumerate(elements)}
        table = tuple(tuple(pos[v] for v in row) for row in doc["table"])
    except (KeyError, TypeError) as exc:
        raise RingParseError(f"malformed Cayley table: {exc}") from None
    if len(pos) != len(elements) or not all(isinstance(s, str) for s in elements):
        raise RingParseError("Cayley elements must be unique strings")
    return CayleyTable(elements, table)


def cyclic_cayley(n: int) -> CayleyTable:
    """Z/n with elements ``e, a, a2, ...``."""
    names = tuple("e" if k == 0 else ("a" if k == 1 else f"a{k}") for k in range(n))
    return CayleyTable(names, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def symmetric_cayley(n: int) -> CayleyTable:
    """S_n acting on ``0..n-1``; the identity is ``e``, others ``p`` + one-line notation."""
    perms = list(itertools.permutations(range(n)))
    ident = tuple(range(n))
    names = tuple("e" if p == ident else "p" + "".join(map(str, p)) for p in perms)
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = tuple(tuple(pos[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    return CayleyTable(names, table)


def dual_group_ring(cayley: CayleyTable, name: str = "dual-group") -> TableRing:
    problems = check_group(cayley)
    if problems:
        raise RingError("not a group table: " + "; ".join(problems))
    n = len(cayley.elements)
    t = cayley.table
    unit = next(e for e in range(n) if all(t[e][a] == a for a in range(n)))
    dual = [next(b for b in range(n) if t[a][b] == unit) for a in range(n)]
    fusion = {(a, b): {t[a][b]: 1} for a in range(n) for b in range(n)}
    return _ensure_valid(TableRing(cayley.elements, unit, dual, [1] * n, fusion, name=name))


def trivial_ring() -> TableRing:
    """The ring of ``G = C``: a single unit label, written ``1``."""
    return TableRing(["1"], 0, [0], [1], {(0, 0): {0: 1}}, name="trivial")


BUILTIN_FAMILIES = ("trivial", "dual-group", "interval-step1", "interval-step2")


def make_builtin(family: str, *, cayley: CayleyTable | None = None, param: int | None = None) -> BaseRing:
    if family == "trivial":
        return trivial_ring()
    if family == "dual-group":
        if cayley is None:
            raise RingError("dual-group needs a Cayley table")
        return dual_group_ring(cayley)
    if family in ("interval-step1", "interval-step2"):
        if param is None:
            raise RingError(f"{family} needs the parameter M")
        return IntervalRing(1 if family.endswith("1") else 2, param)
    raise RingError(f"unknown built-in family {family!r}; choose from {', '.join(BUILTIN_FAMILIES)}")


def iter_labels(ring: BaseRing, budget: int | None) -> Iterator[int]:
    """Indices of the first ``budget`` labels (all labels when ``budget`` is None)."""
    if budget is None:
        if not ring.is_finite:
            raise ValueError(f"{ring.name} is infinite; a label budget is required")
        return iter(range(ring.size))
    if budget < 1:
        raise ValueError("label budget must be positive")
    return iter(range(budget if not ring.is_finite else min(budget, ring.size)))


def labels_from(ring: BaseRing, keys: Iterable[LabelLike]) -> list[Label]:
    return [ring.label(k) for k in keys]
