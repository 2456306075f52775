"""Finite semigroup representations: Green structure, Rees coordinates,
matrices of restricted maps, and structural primitivity of finite actions."""

from .actions import (
    GroupAction,
    action_equivalence,
    action_equivalences,
    is_primitive_group,
    transitivity_class,
)
from .groups import FiniteGroup, group_isomorphisms
from .ramified import (
    ColumnGraph,
    ConstantOutcome,
    CyclicityResult,
    FaithfulReport,
    MapOutcome,
    MatrixEntry,
    MonomialTriple,
    RamifiedMatrix,
    Reductivity,
    VectorElement,
    act_triple,
    act_triple_on_state,
    build_action,
    compose_triples,
    const_entry,
    cyclicity_check,
    enumerate_c_ramifications,
    faithful_ramified,
    graph,
    is_ramification,
    map_entry,
    matrices_equivalent,
    perm_entry,
    reductivity,
    skeleton,
    theta,
    transitivity_check,
    triple_rep,
    triples,
    vec_index,
    vectors,
)
from .rees import (
    ReesExtraction,
    ReesGeneratingSet,
    SandwichMatrix,
    apply_group_map,
    build_rees,
    extract_rees,
    factorize,
    matching_generating_set,
    monomial_product,
    rees_generating_set,
    rees_product,
    sandwich_equivalent,
)
from .representation import (
    MinimalStructure,
    Representation,
    ValidationReport,
    abstract_semigroup,
    congruence_generated,
    expand_constants,
    is_compatible,
    is_primitive_bruteforce,
    max_deflation,
    minimal_structure,
    rep_semigroup,
    restrict,
    semigroup_rep,
    validate_representation,
)
from .reps import (
    InducedAction,
    PrimitiveStructure,
    PrimitivityCertificate,
    RRepClassification,
    RamifyResult,
    classify_r_rep,
    embed_diagonal,
    induced_group_action,
    j_zero_semigroup,
    ker_construction,
    ramify,
    structural_primitivity,
    translational_hull,
)
from .semigroup import (
    FiniteSemigroup,
    GreenData,
    brute_isomorphic,
    close,
    green,
    is_completely_0_simple,
    principal_factor,
    regular_jclasses,
    transformation_semigroup,
)
from .transform import Partition, Transformation, kernel_partition

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
