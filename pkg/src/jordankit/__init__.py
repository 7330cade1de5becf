"""Exact-arithmetic toolkit for finite-dimensional nonassociative algebras."""

from .algebra import (
    Algebra,
    Element,
    IdentityReport,
    Leaf,
    MonomialTree,
    MultOperator,
    Node,
    algebra_from_dict,
    algebra_to_dict,
    all_trees,
    associator,
    canonical_tree,
    commutator,
    identity_element,
    identity_report,
    jordanify,
    load_algebra,
    matrix_units_algebra,
    monomial_eval,
    mult_operators,
    multiply,
    save_algebra,
    xi_eval,
)
from .carrier import FiniteCarrier, carrier_of
from .errors import (
    AlgebraMismatch,
    ArityMismatch,
    BudgetExceeded,
    CarrierInfinite,
    CarrierSizeMismatch,
    CharacteristicUnsupported,
    DecompositionIncomplete,
    DerivationOfIdempotentNotHalf,
    EnumerationTooLarge,
    FormatError,
    JordankitError,
    ModeUnsupported,
    NonPrimeModulus,
    NoncommutativeDomain,
    NotDerivation,
    NotIdempotent,
    PreconditionViolated,
    TorsionViolation,
)
from .maps import (
    DerivationTable,
    FunctionTable,
    MapTable,
    Verdict,
    derivation_peirce_check,
    inner_derivation,
    is_additive,
    is_bijective,
    is_jordan_semitriple,
    is_jordan_triple_derivation,
    is_n_derivation,
    is_n_multiplicative,
    load_map_table,
    map_table_from_dict,
    map_table_to_dict,
    reduce_derivation,
    save_map_table,
)
from .peirce import (
    ConditionReport,
    IdempotentHit,
    PeirceDecomposition,
    PeirceRelationReport,
    check_theorem_conditions,
    find_idempotents,
    idempotent_class,
    peirce_decompose,
    peirce_project,
    symmetrized_product,
    verify_peirce_relations,
)
from .scalars import (
    Field,
    PrimeField,
    RationalField,
    field_from_spec,
    is_torsion_free,
    prime_field,
    rational_field,
)
from .search import (
    AuditReport,
    DerivationSearch,
    MultiplicativeBijectionSearch,
    SearchBudget,
    additivity_audit,
    enumerate_multiplicative_bijections,
    enumerate_n_derivations,
)

__version__ = "0.1.0"
