"""Fusion combinatorics of free wreath products G ≀* S_N^+.

Irreducibles of the wreath product are indexed by words over the labels of
a base fusion ring.  This package decomposes their tensor products, computes
their dimensions as integer polynomials in N, and checks on bounded slices
the word-set lemmas behind simplicity and fullness.
"""

from .fusion import Decomposition, decompose, dim_at, dimpoly, mult_of
from .poly import DimPoly
from .powers import PowersCertificate, build_certificate, check_hypotheses, contraction_count
from .rings import (
    BaseRing,
    CayleyTable,
    IntervalRing,
    Label,
    RingError,
    RingParseError,
    RingValidationError,
    TableRing,
    base_fuse,
    cyclic_cayley,
    dual_group_ring,
    load_ring,
    make_builtin,
    symmetric_cayley,
    trivial_ring,
    validate_ring,
)
from .sets import (
    PreconditionError,
    VerificationReport,
    WordSet,
    circ,
    conj_set,
    enumerate_class,
    find_conjugator,
    verify_fullness_lemma,
    verify_stability,
)
from .sweep import run_sweep
from .words import Word, WordClass, classify, concat, empty, involute, ones, parse_word, word

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
