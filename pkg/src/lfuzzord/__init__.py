"""Finite frames, fuzzy orders, and fuzzy lattice-ordered groups.

The package is organized as the algebra is:

* :mod:`lfuzzord.frame`       -- finite truth-value lattices (tables, residua);
* :mod:`lfuzzord.fuzzy_order` -- frame-valued order relations, certified
  joins/meets with an independent oracle, adjoints, distributivity;
* :mod:`lfuzzord.groups`      -- finite and windowed free abelian carriers,
  region-based value maps;
* :mod:`lfuzzord.ogroup`      -- translation-compatible orders, cones and
  their closures, power identities, constructive splittings;
* :mod:`lfuzzord.subgroup`    -- fuzzy subgroups, convex hulls, quotients,
  kernels;
* :mod:`lfuzzord.enumeration` -- deterministic structure streams and
  hypothesis-dropping searches;
* :mod:`lfuzzord.claims`      -- the claim registry behind ``lfuzzord verify``.
"""

from .frame import (
    Frame,
    boolean_frame,
    build_frame,
    chain_frame,
    join_subset,
    meet_subset,
    product_frame,
    verify_heyting_identities,
)
from .fuzzy_order import (
    FuzzySubset,
    LOrderedSet,
    check_axioms,
    check_distributive,
    chi,
    crisp_lorder,
    down_closure,
    has_right_adjoint,
    image,
    induced_crisp_order,
    is_complete,
    is_galois,
    is_L_lattice,
    is_monotone,
    join,
    join_oracle,
    meet,
    meet_oracle,
    subset_intersection,
    subset_union,
    up_closure,
)
from .groups import FiniteGroup, FreeAbelian, LinearHom, RegionMap, TableMap, Window
from .ogroup import (
    BoxedView,
    CertStatus,
    LOrderedGroup,
    automorphism_group,
    check_fog,
    cone_closure,
    cone_extension,
    cone_of_group,
    distributivity_criterion,
    group_join,
    group_meet,
    monotone_hom_equivalence,
    negate_subset,
    negation_identity,
    order_from_cone,
    positive_cone,
    power_identity,
    power_identity_pair,
    riesz_decompose,
    riesz_meet_inequality,
    riesz_oracle,
    sum_subsets,
    translate_subset,
    validate_cone_axioms,
    verify_sum_law,
)
from .subgroup import (
    QuotientStructure,
    build_quotient,
    convex_hull,
    down_cone_identity,
    induced_embedding,
    is_convex,
    is_L_subgroup,
    is_normal,
    kernel_filter,
    level_subgroup,
    natural_projection,
    quotient_battery,
)

__version__ = "0.1.0"
