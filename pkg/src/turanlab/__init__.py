"""Exact computation and auditing for Turan numbers of K_{H,t}-type
hypergraphs and forbidden 0-1 matrix patterns."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    ArityMismatch,
    ArityTooSmall,
    BudgetExceeded,
    CorruptRecord,
    DegenerateEx,
    DimensionMismatch,
    DuplicateEdge,
    NotKHtFree,
    NotSquare,
    NotUniformMultiplicity,
    ParameterOrder,
    ParseError,
    TuranLabError,
    UnsupportedOrder,
    UnsupportedSize,
    VertexOutOfRange,
    WrongArity,
)
from .hypercore import (
    Hypergraph,
    automorphisms,
    build_k_h_t,
    build_k_h_t_s_r,
    canonical_form,
    complete,
    contains,
    cycle,
    find_embedding,
    is_free,
    is_isomorphic,
    make_hypergraph,
    matching,
    parse_hypergraph,
)
from .lettering import LetteredHypergraph, lemma2_audit, letter_transform, validate_lettering
from .search import SearchLimits, SearchResult, branch_and_bound
from .records import ExtremalRecord, ResultCache, check_witness
from .extremal import ex_exact, f_exact, verify_lemma1
from .matrix01 import (
    Matrix01,
    all_ones,
    from_rows,
    identity,
    inflate,
    mat_avoids,
    mat_contains,
    mat_ex_exact,
    parse_matrix,
    polarity_construction,
    stack,
)
from .bounds import (
    THEOREM3_C,
    THEOREM6_C,
    counting_chain,
    factorial_bound_check,
    kst_parameters,
    theorem3_bound,
    theorem6_bound,
)
from .drc import DrcInstance, drc_sweep, drc_witness, exact_expectation_X, bound_EY
