"""Workbench for finite Heyting and interior algebras.

Submodules:
  algebra   carriers, validation, homomorphisms, congruences, quotients
  frames    posets and preorders with their dual algebras
  functors  open-element restriction, star part, free Boolean extension
  varieties terms, free algebras, presentations, membership, projectivity
  unify     unifier sets, mu-sets, unification types, the transfer map
  harness   verification suites producing replayable reports
  serialize JSON documents for algebras, frames, homs and reports
  cli       the command line front end
"""

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Congruence,
    Signature,
    validate,
    enumerate_homs,
    automorphisms,
    is_isomorphic,
    product,
    generated_subalgebra,
    all_congruences,
    congruence_generated,
    quotient,
    chain_algebra,
    two_element,
)
from .frames import (
    Preorder,
    enumerate_posets,
    enumerate_preorders,
    heyting_dual,
    interior_dual,
    chain_poset,
    antichain,
    cluster,
    simple_monadic_4,
)
from .functors import (
    OpenAlgebra,
    StarAlgebra,
    BooleanExtension,
    open_algebra,
    open_restriction,
    star_algebra,
    star_restriction,
    boolean_extension,
    extension_hom,
    interior_from_implications,
    star_comparison_iso,
    heyting_comparison_iso,
)
from .varieties import (
    BudgetExceeded,
    Term,
    VarietySpec,
    FreeAlgebra,
    Presentation,
    ProjectivityResult,
    variety_of,
    satisfies,
    grz_check,
    grz_check_literal,
    free_algebra,
    member,
    member_hs,
    present,
    presentation_of,
    is_projective,
)
from .unify import (
    QuasiOrderedSet,
    SearchBound,
    Unifier,
    UnifierSet,
    UnificationType,
    TypeOutcome,
    TransferError,
    UnknownVerdict,
    theta_classes,
    mu_set,
    classify_type,
    unifiable,
    unifier_search,
    algebra_type,
    tau,
)
from .harness import (
    SuiteReport,
    suite_roundtrips,
    suite_star,
    suite_grz,
    suite_fullness,
    suite_unification,
    suite_projectivity,
)

__all__ = [
    "FiniteAlgebra",
    "Homomorphism",
    "Congruence",
    "Signature",
    "validate",
    "enumerate_homs",
    "automorphisms",
    "is_isomorphic",
    "product",
    "generated_subalgebra",
    "all_congruences",
    "congruence_generated",
    "quotient",
    "chain_algebra",
    "two_element",
    "Preorder",
    "enumerate_posets",
    "enumerate_preorders",
    "heyting_dual",
    "interior_dual",
    "chain_poset",
    "antichain",
    "cluster",
    "simple_monadic_4",
    "OpenAlgebra",
    "StarAlgebra",
    "BooleanExtension",
    "open_algebra",
    "open_restriction",
    "star_algebra",
    "star_restriction",
    "boolean_extension",
    "extension_hom",
    "interior_from_implications",
    "star_comparison_iso",
    "heyting_comparison_iso",
    "BudgetExceeded",
    "Term",
    "VarietySpec",
    "FreeAlgebra",
    "Presentation",
    "ProjectivityResult",
    "variety_of",
    "satisfies",
    "grz_check",
    "grz_check_literal",
    "free_algebra",
    "member",
    "member_hs",
    "present",
    "presentation_of",
    "is_projective",
    "QuasiOrderedSet",
    "SearchBound",
    "Unifier",
    "UnifierSet",
    "UnificationType",
    "TypeOutcome",
    "TransferError",
    "UnknownVerdict",
    "theta_classes",
    "mu_set",
    "classify_type",
    "unifiable",
    "unifier_search",
    "algebra_type",
    "tau",
    "SuiteReport",
    "suite_roundtrips",
    "suite_star",
    "suite_grz",
    "suite_fullness",
    "suite_unification",
    "suite_projectivity",
]

__version__ = "0.1.0"
