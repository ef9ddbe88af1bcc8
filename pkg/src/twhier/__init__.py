"""Finite-semigroup workbench for the Trotter-Weil hierarchy.

Decides membership of finite monoids and regular languages in the
corner, join, and intersection levels of the hierarchy inside the
unambiguous variety, cross-validated through condensed rankers and
unambiguous interval temporal logic.

The hot kernels (identity assignment scans, ranker signatures,
associativity checks) run on a compiled extension when available and on
a pure-Python fallback otherwise; see ``backend_name()``.
"""

from ._backend import backend_name
from .itl import (
    compile_formula,
    definable_in_itl_m,
    distinguishing_formula,
    eval_formula,
    in_fragment,
    nesting_depth,
    parse_formula,
    render_formula,
    turns,
)
from .languages import (
    Dfa,
    SyntacticMorphism,
    accepts,
    dfa_equivalent,
    minimize,
    morphism_accepts,
    parse_regex,
    regex_to_dfa,
    render_regex,
    syntactic_monoid,
)
from .monoid import (
    Congruence,
    Monoid,
    Transformation,
    content,
    direct_product,
    idempotents,
    is_aperiodic,
    make_monoid,
    multiply,
    omega_power,
    quotient,
    sim_d,
    sim_k,
    transition_monoid,
)
from .rankers import (
    Ranker,
    enumerate_rankers,
    equivalent,
    eval_ranker,
    is_condensed,
    quotient_monoid,
    signature,
)
from .terms import (
    IdentityOfTerms,
    band_identity,
    commutativity_identity,
    da_identity,
    eval_term,
    l2_identity,
    lm_identity,
    parse_identity,
    parse_term,
    r2_identity,
    render_term,
    rm_identity,
    satisfies_identity,
    w_identity,
)
from .varieties import (
    HierarchyProfile,
    aligned_factorization,
    classify,
    in_lm_identity,
    in_lm_malcev,
    in_rm_identity,
    in_rm_malcev,
    in_variety,
    in_wm,
)
from .witnesses import (
    ranker_description,
    verify_separation,
    witness_language,
    witness_words,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
