"""Exact divisor calculus on moduli spaces of pointed curves and their pseudostable models."""
from .index_set import (
    IRR,
    BoundaryIndex,
    BridgeType,
    Containment,
    MarkedGenus,
    TSubset,
    bridge_types,
    canonical_index,
    count_admissible,
    enumerate_admissible,
    enumerate_indices,
    is_admissible,
    minimal_subsets,
    subsets_give_same_stack,
    t_adm,
    t_div,
)
from .divisor_algebra import (
    AdjointParams,
    DivisorClass,
    Space,
    canonical_divisor,
    canonical_pullback,
    from_adjoint,
    is_T_compatible,
    pullback_flag_map,
    pullback_upsilon,
    pushforward_upsilon,
    to_adjoint,
)
from .fcurves import FCurve, enumerate_fcurves, fcurves_in_NE_upsilonT, intersect, intersect_bridge, intersection_vector, weight
from .positivity import (
    Mode,
    PositivityVerdict,
    Status,
    adjoint_fnef_closed_form,
    brute_force_verdict,
    ps_adjoint_fnef_for_T,
    verdict_matches_T,
)
from .ample_model import AmpleModelResult, GridSpec, Model, RationalRange, Reason, classify, sweep, uniqueness_check
from .geometry_props import FactorizationDescriptor, descends, factorize, is_q_factorial

__version__ = "0.1.0"
