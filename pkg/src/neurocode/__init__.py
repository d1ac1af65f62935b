"""Combinatorial neural codes: canonical forms of neural ideals, code
graphs, morphism checking, elementary code maps, and exact convex
realizations."""

from .codes import (
    Code,
    CodeMap,
    CodeParseError,
    Codeword,
    ElementaryMap,
    SimplicialComplex,
    apply_elementary_map,
    cc_family,
    check_monotone,
    complete_iso,
    cr_family,
    is_isomorphism,
    is_morphism,
    is_trunk,
    parse_code,
    simplicial_complex,
    trunk,
    union_closure_condition,
)
from .graphs import (
    CodeGraph,
    ccg,
    diameter,
    distance,
    gr_complex,
    grg,
    is_complete,
    is_connected,
    is_regular,
    to_dot,
)
from .ideal import (
    ZERO,
    CanonicalForm,
    PseudoMonomial,
    canonical_form,
    canonical_form_naive,
    canonical_form_oracle,
    cf_cc_formula,
    cf_cr_formula,
    predict_cf,
    rho,
)
from .realization import (
    IntervalCover,
    SegmentCover,
    cc_m_intervals,
    cf_from_intervals,
    code_of_intervals,
    code_of_segments,
    cr_k_polygon,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "Code",
    "CodeGraph",
    "CodeMap",
    "CodeParseError",
    "Codeword",
    "ElementaryMap",
    "IntervalCover",
    "PseudoMonomial",
    "SegmentCover",
    "SimplicialComplex",
    "ZERO",
    "apply_elementary_map",
    "canonical_form",
    "canonical_form_naive",
    "canonical_form_oracle",
    "cc_family",
    "cc_m_intervals",
    "ccg",
    "cf_cc_formula",
    "cf_cr_formula",
    "cf_from_intervals",
    "check_monotone",
    "code_of_intervals",
    "code_of_segments",
    "complete_iso",
    "cr_family",
    "cr_k_polygon",
    "diameter",
    "distance",
    "gr_complex",
    "grg",
    "is_complete",
    "is_connected",
    "is_isomorphism",
    "is_morphism",
    "is_regular",
    "is_trunk",
    "parse_code",
    "predict_cf",
    "rho",
    "simplicial_complex",
    "to_dot",
    "trunk",
    "union_closure_condition",
]
