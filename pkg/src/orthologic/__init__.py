"""Model checking over finite ortholattices.

Build lattices from Hasse diagrams or subset families, check identities and
Horn conditions by exhaustive valuation, classify lattices into the weak
orthomodular varieties, and verify derivations in the systems CL and QL.
"""

from .builtin_lattices import BUILTIN_NAMES, HEXAGON, all_builtins, builtin, load_lattice
from .checker import (
    CheckResult,
    VarietyProfile,
    check_condition,
    check_consequence,
    check_horn,
    check_identity,
    check_validity,
    classify,
    cross_validate_oml,
    enumerate_valuations,
    evaluate,
    oml_equiv2,
)
from .errors import *  # noqa: F401,F403
from .lattice import (
    FiniteOrtholattice,
    HasseSpec,
    SubsetFamilySpec,
    build_from_hasse,
    find_isomorphism,
    find_o6_subalgebra,
    from_subset_family,
    invariant_violations,
    parse_hasse_text,
    subalgebra,
)
from .logic import (
    AXIOMS,
    Derivation,
    match_schema,
    parse_derivation,
    soundness_suite,
    translate,
    verify_derivation,
)
from .terms import (
    HornCondition,
    builtin_condition,
    expand,
    parse_conditions,
    parse_schema,
    parse_term,
    parse_wff,
    to_text,
    to_unicode,
)

__version__ = "0.1.0"
