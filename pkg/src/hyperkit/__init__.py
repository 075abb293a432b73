"""Finite hyperstructures: canonical hypergroups, hyperfields, orders and hypervaluations."""
from .build import check_document
from .convolution import FiniteSupportMap, associativity_probe, convolve, paper_maps, pointwise_add
from .core import (
    MAX_CARRIER,
    AxiomError,
    Diagnostic,
    FiniteCanonicalHypergroup,
    check_marty,
    diagnose_canonical,
    embed_group,
    sign_hypergroup,
    trivial_hypergroup,
    verify_canonical,
)
from .dsl import DSLError, StructureDocument, parse, serialize
from .enumeration import (
    enumerate_canonical_hypergroups,
    enumerate_hyperfields,
    enumerate_hypervaluations,
    enumerate_ordered_hypergroups,
    mine_cone_order_counterexample,
    naive_canonical_hypergroups,
)
from .hyperrings import (
    FiniteHyperfield,
    FiniteHyperring,
    is_maximal,
    sign_hyperfield,
    units,
    verify_hyperfield,
    verify_hyperideal,
    verify_hyperring,
)
from .morphisms import HypergroupMap, find_isomorphism, is_homomorphism, is_strong_homomorphism
from .order import (
    OrderRelation,
    OrderedCanonicalHypergroup,
    check_compatibility,
    check_fvk_properties,
    dominates,
    relation_from_cone,
    sign_order,
    verify_positive_cone,
)
from .padic import decompose_sampled, o_equal_without_isomorphism_report, sampled_check, sign_hypervaluation_padic
from .quotients import demonstrate_ZN_failure, quotient_hyperfield, quotient_hypergroup, sign_quotient_of_rationals
from .report import TOOL_VERSION, Check, Report
from .squareclass import (
    SquareClass,
    hilbert_symbol,
    reproduce_cone_counterexample,
    sc_membership_exact,
    sc_sum_members,
    square_class_of,
)
from .valuations import INF, FiniteHypervaluation, check_hypervaluation, check_prop, check_valpro, decompose

__version__ = TOOL_VERSION
