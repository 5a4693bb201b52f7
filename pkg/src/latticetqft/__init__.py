"""Exact lattice state-sum invariants of triangulated surfaces.

Builds the tensor network of a semisimple *-algebra on a Delta-complex
triangulation, contracts it in exact rational arithmetic, and cross-checks
the result against homomorphism counts and character data (Mednykh's formula
and its Frobenius-Schur analogue).
"""

from .algebra import (
    BasedAlgebra,
    Block,
    StructuredAlgebra,
    direct_sum,
    group_algebra,
    matrix_algebra,
    parse_algebra_spec,
    swap_algebra,
    tensor_product,
)
from .grouptheory import (
    FiniteGroup,
    IrrepData,
    catalog,
    group_from_permutations,
    hom_count_nonorientable,
    hom_count_orientable,
    irrep_data,
    labeling_count,
    parse_group_spec,
)
from .surface import (
    Side,
    Triangulation,
    from_gluing_data,
    nonorientable_surface,
    orientable_genus_surface,
    pachner_13,
    pachner_22,
    pachner_31,
    parse,
    random_pachner_walk,
)
from .tqft import (
    ContractionPlan,
    TensorNetwork,
    build_network,
    contract,
    invariant_direct,
    invariant_structured,
    mednykh_lhs,
    mednykh_rhs,
    plan_contraction,
)
from .verify import (
    FuzzResult,
    VerificationReport,
    pachner_fuzz,
    parse_surface_spec,
    verify_grid,
    verify_mednykh,
)

__version__ = "0.1.0"
