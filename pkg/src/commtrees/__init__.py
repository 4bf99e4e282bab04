"""Exact commuting-graph machinery for finite groups.

Build groups as canonical multiplication tables (from generators or named
families), form commuting graphs, count spanning trees by several
independent exact engines, decompose the noncentral part into centralizer
cliques, search for abelian partitions, and verify closed-form counts
against the engines through a discrepancy ledger.
"""

from .carriers import Mat, Perm, element_compose, element_identity, element_inverse
from .commgraph import (
    EXACT_MIS_CAP,
    CommGraph,
    NoncommutingSet,
    centralizer_core_abelian,
    centralizer_decomposition,
    clique_model,
    commuting_graph,
    from_adjacency,
    independence_number,
    noncentral_centralizer_sets,
    noncommuting_graph,
    universal_vertices,
)
from .errors import (
    AbelianInput,
    BadParams,
    CarrierMismatch,
    CenterTooSmall,
    CommTreesError,
    ExactCapExceeded,
    IndexTooSmall,
    InvalidGenerator,
    NonIntegerResult,
    NonPrimeCharacteristic,
    NotACGroup,
    NotMaximumWitness,
    NotNormal,
    OrderCapExceeded,
    OrderMismatch,
    ParamsOutOfRange,
    PDoesNotDivideOrder,
    TargetTooLarge,
    UnsupportedSize,
)
from .families import direct_product, family_names, make_family
from .fields import Field, build_field, least_irreducible
from .formulas import (
    LedgerEntry,
    closed_form,
    formula_ids,
    ledger_json,
    unexpected_mismatches,
    verify_ledger,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupProfile,
    GroupTable,
    Subgroup,
    center,
    centralizer,
    generate_group,
    is_ac_group,
    is_isomorphic_small,
    is_ti_subgroup,
    make_subgroup,
    profile,
    quotient,
    subgroup_closure,
    subgroup_table,
    sylow_subgroups,
    table_from_elements,
)
from .partitions import (
    EXACT_SEARCH_CAP,
    PartitionCertificate,
    abelian_subgroups,
    classify_2_abelian,
    classify_3_abelian,
    coset_partition,
    find_partition,
    frobenius_empty_complement,
    lower_bound_blocks,
    verify_partition,
)
from .spectra import (
    Complete,
    Disjoint,
    Empty,
    Join,
    LapSpectrum,
    format_expr,
    kappa_centerless,
    kappa_from_spectrum,
    parse_expr,
    realize,
    sigma_eval,
    spectrum,
)
from .treecount import (
    MATRIX_TREE_CAP,
    KappaResult,
    default_bit_bound,
    factor_int,
    factored_value,
    kappa_ac,
    kappa_auto,
    kappa_matrix_tree,
    kappa_modular,
    merge_factored_powers,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInput",
    "BadParams",
    "CarrierMismatch",
    "CenterTooSmall",
    "CommGraph",
    "CommTreesError",
    "Complete",
    "DEFAULT_ORDER_CAP",
    "Disjoint",
    "EXACT_MIS_CAP",
    "EXACT_SEARCH_CAP",
    "Empty",
    "ExactCapExceeded",
    "Field",
    "GroupProfile",
    "GroupTable",
    "IndexTooSmall",
    "InvalidGenerator",
    "Join",
    "KappaResult",
    "LapSpectrum",
    "LedgerEntry",
    "MATRIX_TREE_CAP",
    "Mat",
    "NonIntegerResult",
    "NonPrimeCharacteristic",
    "NoncommutingSet",
    "NotACGroup",
    "NotMaximumWitness",
    "NotNormal",
    "OrderCapExceeded",
    "OrderMismatch",
    "ParamsOutOfRange",
    "PDoesNotDivideOrder",
    "PartitionCertificate",
    "Perm",
    "Subgroup",
    "TargetTooLarge",
    "UnsupportedSize",
    "abelian_subgroups",
    "build_field",
    "center",
    "centralizer",
    "centralizer_core_abelian",
    "centralizer_decomposition",
    "classify_2_abelian",
    "classify_3_abelian",
    "clique_model",
    "closed_form",
    "commuting_graph",
    "coset_partition",
    "default_bit_bound",
    "direct_product",
    "element_compose",
    "element_identity",
    "element_inverse",
    "factor_int",
    "factored_value",
    "family_names",
    "find_partition",
    "format_expr",
    "formula_ids",
    "from_adjacency",
    "frobenius_empty_complement",
    "generate_group",
    "independence_number",
    "is_ac_group",
    "is_isomorphic_small",
    "is_ti_subgroup",
    "kappa_ac",
    "kappa_auto",
    "kappa_centerless",
    "kappa_from_spectrum",
    "kappa_matrix_tree",
    "kappa_modular",
    "least_irreducible",
    "ledger_json",
    "lower_bound_blocks",
    "make_family",
    "make_subgroup",
    "merge_factored_powers",
    "noncentral_centralizer_sets",
    "noncommuting_graph",
    "parse_expr",
    "profile",
    "quotient",
    "realize",
    "sigma_eval",
    "spectrum",
    "subgroup_closure",
    "subgroup_table",
    "sylow_subgroups",
    "table_from_elements",
    "unexpected_mismatches",
    "universal_vertices",
    "verify_ledger",
    "verify_partition",
]
