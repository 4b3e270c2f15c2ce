"""Capacity regions, regime classification and sum-capacity bounds for the
two-cell interfering Gaussian multiple-access channel."""

from .bounds import (
    DomainError,
    GenieParams,
    OptimizerSettings,
    SumCapacityBounds,
    bounds,
    genie_objective,
    lower_bound_tin,
    upper_bound,
)
from .channel import ImacChannel, inr, mac_spec, new_channel
from .polymatroid import (
    MacSpec,
    contains,
    greedy_vertex,
    max_weighted_sum,
    rank,
    region_contained_in,
    sum_capacity,
)
from .regimes import RegimeError, RegimeReport, classify, exact_sum_capacity
from .regions import (
    RatePoint4,
    RatePolytope,
    achievable_product_region,
    ivs_region,
    max_sum_rate,
    member,
    mses_region,
    outer_bound,
)

__all__ = [
    "DomainError", "GenieParams", "OptimizerSettings", "SumCapacityBounds", "bounds",
    "genie_objective", "lower_bound_tin", "upper_bound", "ImacChannel", "inr", "mac_spec",
    "new_channel", "MacSpec", "contains", "greedy_vertex", "max_weighted_sum", "rank",
    "region_contained_in", "sum_capacity", "RegimeError", "RegimeReport", "classify",
    "exact_sum_capacity", "RatePoint4", "RatePolytope", "achievable_product_region",
    "ivs_region", "max_sum_rate", "member", "mses_region", "outer_bound",
]
