"""Finite-group actions toolkit: Cayley-table groups, abelian group
cohomology with independent oracles, central-extension skew forms,
spectral-sequence cardinality ledgers, and fixed-point signature
arithmetic."""

__version__ = "0.1.0"

from .abelian import (
    FgAbelian,
    GradedAbelian,
    bar_cohomology_oracle,
    cyclic_group,
    direct_sum,
    e_f_recursions,
    elementary_cohomology_closed,
    ext_group,
    hom_group,
    kunneth_cohomology,
    kunneth_homology,
    resolution_cohomology_oracle,
    tensor_group,
    tor_group,
    ucf_cohomology,
)
from .config import Caps, active_caps
from .extensions import (
    aut_pointwise_bound,
    central_extension,
    characteristic_core,
    corpus_central_extensions,
    generation_bound_check,
    maximal_isotropic,
    mnas_suite,
    omega_form,
    pointwise_fixed_aut_count,
    verify_omega_lifts,
)
from .families import FamilySpec, make_family, standard_corpus
from .fixedpoint import (
    FixedSurfaceDatum,
    RotationBlockPair,
    exhaustive_roots_verify,
    find_good_exponent,
    g_signature_sum,
    sign_balance_check,
    roots_constants,
    signature_consistency,
    so4_product_fixed_dim,
)
from .groups import (
    Group,
    Subgroup,
    abelian_invariants,
    automorphism_group,
    build_group,
    enumerate_subgroups,
    quotient,
    structure_report,
)
from .jordan import alpha, beta2, in_T_class, j_property, jordan_report, minkowski_bound
from .spectral import (
    E2Ledger,
    XProfile,
    cyclic_e2_profile,
    e2_matrix,
    free_action_obstruction,
)
