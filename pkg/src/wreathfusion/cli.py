"""Command-line interface.

JSON goes to stdout, diagnostics to stderr.  Exit status: 0 success, 1 a
verification failed (or a certificate was truncated), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .fusion import decompose, dimpoly
from .powers import DEFAULT_MAX_SUPPORT, as_fraction, build_certificate
from .rings import (
    BUILTIN_FAMILIES,
    BaseRing,
    RingError,
    RingParseError,
    RingValidationError,
    UnknownLabelError,
    cayley_from_document,
    cyclic_cayley,
    load_ring,
    make_builtin,
    symmetric_cayley,
    validate_ring,
)
from .sets import (
    DEFAULT_LABEL_BUDGET,
    DEFAULT_MAXLEN,
    PreconditionError,
    WordSet,
    circ,
    enumerate_class,
    verify_fullness_lemma,
    verify_stability,
)
from .sweep import DEFAULT_ORACLE_MAXLEN, DEFAULT_POSITIVITY_MAXLEN, default_alpha, run_sweep
from .words import CLASS_NAMES, WordSyntaxError, classify, format_word, parse_word, parse_words


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _rational(text: str) -> Fraction:
    try:
        v = as_fraction(text.strip())
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


# ----------------------------------------------------------------------
# ring selection


def _load_cayley(source: str):
    if source.startswith("cyclic:"):
        return cyclic_cayley(int(source.split(":", 1)[1]))
    if source.startswith("symmetric:"):
        return symmetric_cayley(int(source.split(":", 1)[1]))
    try:
        doc = json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise RingParseError(f"cannot read Cayley table {source!r}: {exc}") from None
    return cayley_from_document(doc)


def resolve_ring(args) -> BaseRing:
    source = args.ring
    if source.startswith("builtin:"):
        family = source.split(":", 1)[1]
        if family not in BUILTIN_FAMILIES:
            raise UsageError(f"unknown built-in family {family!r}; choose from {', '.join(BUILTIN_FAMILIES)}")
        cayley = _load_cayley(args.cayley) if args.cayley else None
        if family == "dual-group" and cayley is None:
            raise UsageError("builtin:dual-group needs --cayley <file|cyclic:N|symmetric:N>")
        return make_builtin(family, cayley=cayley, param=args.param)
    return load_ring(source)


def _budget(args, ring: BaseRing) -> int | None:
    return args.labels


def _alpha(args, ring: BaseRing):
    if args.alpha is None:
        a = default_alpha(ring)
        if a is None:
            raise PreconditionError("the base ring needs at least two labels (|Irr(G)| >= 2)")
        return a
    return ring.index_of(args.alpha)


# ----------------------------------------------------------------------
# output


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _report_rows(report_dict: dict, section: str = "") -> list[list]:
    rows = []
    for item in report_dict.get("items", report_dict.get("checks", [])):
        claim = item.get("claim", item.get("check"))
        status = "pass" if item["passed"] else "FAIL"
        witness = "" if item["passed"] else json.dumps(item.get("witness"), ensure_ascii=False)
        rows.append([section, claim, status, witness] if section else [claim, status, witness])
    return rows


def emit(args, payload, table: str | None = None) -> None:
    if args.format == "table" and table is not None:
        print(table)
    else:
        print(json.dumps(payload, indent=2, ensure_ascii=False))


# ----------------------------------------------------------------------
# commands


def cmd_validate_ring(args) -> int:
    try:
        ring = resolve_ring(args)
    except RingValidationError as exc:
        report = exc.report
        if report is None:
            raise
        d = report.to_dict()
        emit(args, d, _table(["check", "status", "witness"], _report_rows(d)))
        return 1
    report = validate_ring(ring, bound=args.bound)
    d = report.to_dict()
    emit(args, d, _table(["check", "status", "witness"], _report_rows(d)))
    return 0 if report.ok else 1


def cmd_decompose(args) -> int:
    ring = resolve_ring(args)
    x, y = parse_word(ring, args.x), parse_word(ring, args.y)
    d = decompose(ring, x, y)
    emit(args, d.to_json(), _table(["word", "mult"], [[str(w), m] for w, m in d.items()]))
    return 0


def cmd_dim(args) -> int:
    ring = resolve_ring(args)
    x = parse_word(ring, args.x)
    p = dimpoly(ring, x)
    if args.at is not None:
        if args.at < 4:
            print(f"note: N = {args.at} < 4; the word labelling is only claimed for N >= 4", file=sys.stderr)
        print(p(args.at))
    else:
        if args.format == "table":
            print(str(p))
        else:
            print(json.dumps(list(p.coeffs)))
    return 0


def cmd_classify(args) -> int:
    ring = resolve_ring(args)
    x = parse_word(ring, args.x)
    c = classify(x)
    payload = {"word": format_word(x), "classes": c.to_dict()}
    emit(args, payload, _table(["class", "member"], [[n, v] for n, v in c.to_dict().items()]))
    return 0


def cmd_circ(args) -> int:
    ring = resolve_ring(args)
    A = WordSet(ring, parse_words(ring, args.a))
    B = WordSet(ring, parse_words(ring, args.b))
    out = circ(ring, A, B)
    emit(args, {"words": out.to_json()}, "\n".join(out.to_json()))
    return 0


def cmd_classify_enum(args) -> int:
    ring = resolve_ring(args)
    out = enumerate_class(ring, args.cls, args.maxlen, _budget(args, ring))
    emit(args, {"class": args.cls, "maxlen": args.maxlen, "words": out.to_json()}, "\n".join(out.to_json()))
    return 0


def cmd_verify(args) -> int:
    ring = resolve_ring(args)
    budget = _budget(args, ring)
    if args.what == "sweep":
        alpha = ring.index_of(args.alpha) if args.alpha is not None else None
        result = run_sweep(ring, alpha, args.maxlen, budget, args.oracle_maxlen, args.positivity_maxlen)
        d = result.to_dict()
        rows = []
        for name, section in d["sections"].items():
            rows.extend(_report_rows(section, name))
        emit(args, d, _table(["section", "claim", "status", "witness"], rows))
        return 0 if result.ok else 1
    alpha = _alpha(args, ring)
    fn = verify_stability if args.what == "stability" else verify_fullness_lemma
    report = fn(ring, alpha, args.maxlen, budget)
    d = report.to_dict()
    emit(args, d, _table(["claim", "status", "witness"], _report_rows(d)))
    return 0 if report.ok else 1


def cmd_powers_cert(args) -> int:
    ring = resolve_ring(args)
    support = WordSet(ring, parse_words(ring, args.support))
    alpha = _alpha(args, ring)
    cert = build_certificate(
        ring, support, alpha, args.c0,
        max_support=args.max_support,
        trace_sets=args.trace_sets,
        threshold=args.eps if args.eps is not None else Fraction(1, 4),
        hypothesis_maxlen=args.maxlen,
        label_budget=_budget(args, ring),
    )
    d = cert.to_dict()
    table = _table(
        ["field", "value"],
        [
            ["conjugator", d["conjugator"]],
            ["k", d["k"]],
            ["c0", d["c0"]],
            ["threshold", d["threshold"]],
            ["iterations", d["iterations"]],
            ["final bound", d["norm_bound_trace"][-1]],
            ["support sizes", " ".join(map(str, d["support_sizes"]))],
            ["truncated", d["truncated"]],
            ["passed", d["passed"]],
        ],
    )
    emit(args, d, table)
    return 0 if cert.ok else 1


# ----------------------------------------------------------------------
# parser


def _add_ring_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ring", required=True,
                   help="ring JSON file, or builtin:{trivial,dual-group,interval-step1,interval-step2}")
    p.add_argument("--cayley", help="Cayley table JSON file, or cyclic:N / symmetric:N (for builtin:dual-group)")
    p.add_argument("--param", type=int, help="parameter M of the interval families (M >= 4)")
    p.add_argument("--format", choices=("json", "table"), default="json")


def _add_bounds(p: argparse.ArgumentParser, labels_default=DEFAULT_LABEL_BUDGET) -> None:
    p.add_argument("--maxlen", type=_nonneg_int, default=DEFAULT_MAXLEN)
    p.add_argument("--labels", type=_positive_int, default=labels_default,
                   help="label budget: letters are drawn from the first B labels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreath-fusion",
        description="Fusion rules of free wreath products G ≀* S_N^+ and bounded lemma checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-ring", help="check the invariants of a base ring")
    _add_ring_args(p)
    p.add_argument("--bound", type=_positive_int, default=6, help="labels checked for infinite families")
    p.set_defaults(func=cmd_validate_ring)

    p = sub.add_parser("decompose", help="decompose ω(x) ⊗ ω(y)")
    _add_ring_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("dim", help="dimension of ω(x) as a polynomial in n, or at n = N")
    _add_ring_args(p)
    p.add_argument("--x", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--poly", action="store_true", help="coefficients low-to-high (default)")
    mode.add_argument("--at", type=_positive_int, metavar="N")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("classify", help="word-class membership of a word")
    _add_ring_args(p)
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("circ", help="A ∘ B for ';'-separated word lists")
    _add_ring_args(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_circ)

    p = sub.add_parser("classify-enum", help="enumerate a class slice")
    _add_ring_args(p)
    p.add_argument("--class", dest="cls", required=True, choices=CLASS_NAMES)
    _add_bounds(p)
    p.set_defaults(func=cmd_classify_enum)

    p = sub.add_parser("verify", help="bounded lemma verification")
    p.add_argument("what", choices=("stability", "fullness", "sweep"))
    _add_ring_args(p)
    p.add_argument("--alpha", help="non-unit label (default: first non-unit label)")
    _add_bounds(p)
    p.add_argument("--oracle-maxlen", type=_nonneg_int, default=DEFAULT_ORACLE_MAXLEN,
                   help="word length bound for the fusion oracles in a sweep")
    p.add_argument("--positivity-maxlen", type=_nonneg_int, default=DEFAULT_POSITIVITY_MAXLEN)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("powers-cert", help="Powers-method support/contraction certificate")
    _add_ring_args(p)
    p.add_argument("--support", required=True, help="';'-separated words, all in S")
    p.add_argument("--alpha")
    p.add_argument("--c0", type=_rational, required=True, help="initial norm bound p/q")
    p.add_argument("--eps", type=_rational, help="target threshold p/q (default 1/4)")
    p.add_argument("--max-support", type=_positive_int, default=DEFAULT_MAX_SUPPORT)
    p.add_argument("--trace-sets", action="store_true")
    _add_bounds(p)
    p.set_defaults(func=cmd_powers_cert)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RingValidationError as exc:
        print(f"error: invalid ring: {exc}", file=sys.stderr)
        return 2
    except (UsageError, RingError, WordSyntaxError, UnknownLabelError, PreconditionError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownLabelError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
