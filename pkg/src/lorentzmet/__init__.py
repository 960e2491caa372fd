"""Finite and sampled bounded Lorentzian metric spaces.

Causets (finite Lorentzian distance matrices), axiom validation, the
distinction metric, causal structure and time functions, Gromov-Hausdorff
distances, epsilon-nets, rationalization, limits, a flat diamond sampler,
and flat-model curvature comparison.
"""

from .causal import (
    CausalRelation,
    Chain,
    TimeFunction,
    causal_relation,
    chain_length,
    is_chain,
    is_maximal,
    longest_chain,
    time_function,
    time_function_normalized,
)
from .causet import (
    Causet,
    ValidationReport,
    Violation,
    adjoin_boundary,
    chronological_relation,
    diameter,
    distance_quotient,
    dump_causet,
    find_isometries,
    induced,
    load_causet,
    reverse_triangle_slack,
    strip_boundary,
    validate,
)
from .curvature import (
    CheckRecord,
    CurvatureReport,
    SideParams,
    SidePoint,
    TimelikeTriangle,
    TriangleRecord,
    check_curvature_bound,
    comparison_distance_m0,
    comparison_triangle_m0,
    realizable,
)
from .diamond import (
    DiamondSpace,
    SampleSpec,
    causet_from_points,
    diamond_distance,
    diamond_gamma,
    gamma_scaling_exponent,
    sample_causet,
)
from .distinction import (
    GammaMatrix,
    KuratowskiVector,
    gamma,
    gamma_ball,
    hausdorff_gamma,
    kuratowski_distance,
    kuratowski_embed,
    noldus,
)
from .gh import (
    Correspondence,
    GHResult,
    compose,
    distortion,
    epsilon_isometry_from,
    gh_exact,
    gh_lower_bounds,
    gh_upper_greedy,
    gh_zero_is_isometry,
    map_distortion,
)
from .nets import (
    EpsilonNet,
    FamilyReport,
    MemberCheck,
    TotallyBoundedParams,
    check_uniformly_totally_bounded,
    extract_net,
    limit_causet,
    net_correspondence,
    net_to_causet,
    rationalize,
    simplest_rational_between,
)

__version__ = "0.1.0"

__all__ = [
    "CausalRelation",
    "Causet",
    "Chain",
    "CheckRecord",
    "Correspondence",
    "CurvatureReport",
    "DiamondSpace",
    "EpsilonNet",
    "FamilyReport",
    "GHResult",
    "GammaMatrix",
    "KuratowskiVector",
    "MemberCheck",
    "SampleSpec",
    "SideParams",
    "SidePoint",
    "TimeFunction",
    "TimelikeTriangle",
    "TotallyBoundedParams",
    "TriangleRecord",
    "ValidationReport",
    "Violation",
    "adjoin_boundary",
    "causal_relation",
    "causet_from_points",
    "chain_length",
    "check_curvature_bound",
    "check_uniformly_totally_bounded",
    "chronological_relation",
    "comparison_distance_m0",
    "comparison_triangle_m0",
    "compose",
    "diameter",
    "diamond_distance",
    "diamond_gamma",
    "distance_quotient",
    "distortion",
    "dump_causet",
    "epsilon_isometry_from",
    "extract_net",
    "find_isometries",
    "gamma",
    "gamma_ball",
    "gamma_scaling_exponent",
    "gh_exact",
    "gh_lower_bounds",
    "gh_upper_greedy",
    "gh_zero_is_isometry",
    "hausdorff_gamma",
    "induced",
    "is_chain",
    "is_maximal",
    "kuratowski_distance",
    "kuratowski_embed",
    "limit_causet",
    "load_causet",
    "longest_chain",
    "map_distortion",
    "net_correspondence",
    "net_to_causet",
    "noldus",
    "rationalize",
    "realizable",
    "reverse_triangle_slack",
    "sample_causet",
    "simplest_rational_between",
    "strip_boundary",
    "time_function",
    "time_function_normalized",
    "validate",
]
