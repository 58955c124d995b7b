"""Fixed points of pinned automorphisms: lattice folding, flatness and
smoothness criteria, equivariant structure constants, and brute-force
verification on matrix groups over small finite fields."""

from .errors import (
    DomainError,
    FoldlabError,
    InternalInconsistencyError,
    InvalidActionError,
    ResourceLimitError,
)
from .intlat import (
    CoinvariantLattice,
    FinAbGroup,
    IntMatrix,
    coinvariants,
    cokernel,
    hom_to_units_count,
    integer_kernel,
    prime_power,
    smith_normal_form,
)
from .rootdata import (
    CartanType,
    RootDatum,
    WeylGroup,
    build_preset,
    build_torus,
    cartan_matrix,
    cartan_type_of,
)
from .action import PinnedAction, permutation_matrix, trivial_action
from .folding import (
    VARIANTS,
    FixedWeyl,
    FoldClass,
    FoldedDatum,
    ParabolicReport,
    center_structure,
    equivalence_classes,
    fixed_weyl,
    folded_root_datum,
    isogeny_injectivity_check,
    parabolic_correspondence,
)
from .criteria import (
    BaseSpec,
    CriteriaReport,
    FiberReport,
    active_even_a_components,
    decide,
    fiber_report,
)
from .chevalley import (
    EquivarianceReport,
    StructureConstants,
    automorphism_constants,
    base_constants,
    chain_length,
    check_equivariance,
    equivariant_signs,
    rescale,
    verify_jacobi,
)
from .matrixlab import (
    GF,
    CountReport,
    bruhat_predicted_count,
    count_fixed,
    dual_fixed_count,
    embed_matrix_over,
    embedding_identity_holds,
    involution_form,
    is_theta_fixed,
    sl_order,
    tangent_dim,
    theta,
    u3_fixed_presentation,
    u_fixed_factors,
    u_fixed_point_count,
    verify_fixed_count,
    xi_even,
    xi_odd,
)
from .presets import (
    Preset,
    basis_permutation_matrix,
    load_preset,
    preset_names,
    type_a_flip,
)

__version__ = "0.1.0"

__all__ = [
    "BaseSpec",
    "CartanType",
    "CoinvariantLattice",
    "CountReport",
    "CriteriaReport",
    "DomainError",
    "EquivarianceReport",
    "FiberReport",
    "FinAbGroup",
    "FixedWeyl",
    "FoldClass",
    "FoldedDatum",
    "FoldlabError",
    "GF",
    "IntMatrix",
    "InternalInconsistencyError",
    "InvalidActionError",
    "ParabolicReport",
    "PinnedAction",
    "Preset",
    "ResourceLimitError",
    "RootDatum",
    "StructureConstants",
    "VARIANTS",
    "WeylGroup",
    "active_even_a_components",
    "automorphism_constants",
    "base_constants",
    "basis_permutation_matrix",
    "bruhat_predicted_count",
    "build_preset",
    "build_torus",
    "cartan_matrix",
    "cartan_type_of",
    "center_structure",
    "chain_length",
    "check_equivariance",
    "coinvariants",
    "cokernel",
    "count_fixed",
    "decide",
    "dual_fixed_count",
    "embed_matrix_over",
    "embedding_identity_holds",
    "equivalence_classes",
    "equivariant_signs",
    "fiber_report",
    "fixed_weyl",
    "folded_root_datum",
    "hom_to_units_count",
    "integer_kernel",
    "involution_form",
    "is_theta_fixed",
    "isogeny_injectivity_check",
    "load_preset",
    "parabolic_correspondence",
    "permutation_matrix",
    "preset_names",
    "prime_power",
    "rescale",
    "sl_order",
    "smith_normal_form",
    "tangent_dim",
    "theta",
    "trivial_action",
    "type_a_flip",
    "u3_fixed_presentation",
    "u_fixed_factors",
    "u_fixed_point_count",
    "verify_fixed_count",
    "verify_jacobi",
    "xi_even",
    "xi_odd",
]
