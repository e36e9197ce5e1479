"""cayleyforge: finite Cayley and coset graphs and their symmetry analysis."""

from .perm import (
    BudgetError,
    NotSubnormal,
    Perm,
    PermGroup,
    SubnormalChain,
    group_from_generators,
    is_frobenius,
    is_normal_in,
    minimal_normal_subgroups,
    normal_closure,
    socle,
    subnormal_chain,
)
from .grp import (
    FiniteGroup,
    GF2m,
    GroupAutomorphism,
    alternating,
    aut_set_stabilizer,
    automorphism_group,
    catalog,
    cyclic,
    dicyclic,
    dihedral,
    direct_power,
    direct_product,
    elementary_abelian,
    generalized_inversion_product,
    holomorph,
    inner_closure,
    left_regular_rep,
    quaternion,
    right_regular_rep,
    suzuki_group,
    suzuki_order,
    symmetric,
)
from .graphs import (
    CayleyContext,
    CosetContext,
    Graph,
    cayley_graph,
    coset_graph,
    coset_graph_connected,
    is_complete_bipartite,
    normal_quotient,
)
from .symmetry import (
    LocalAction,
    SymmetryReport,
    double_coset_arc_criterion,
    induced_coset_automorphism,
    local_action,
    transitivity_suite,
)
from .autgrp import (
    automorphism_group_brute,
    automorphism_group_of_graph,
    godsil_normalizer_check,
)
from .constructions import (
    BipartiteExample,
    HalfSymCertificate,
    build_bipartite_example,
    classify_subnormal_two_arc,
    half_symmetric_connection_set,
    half_symmetry_certificate,
)

__version__ = "0.1.0"
