from feetiers.logics.cycle_model.equilibrium import (
    comparative_statics,
    cycle_durations,
    f1,
    f1_root,
    f2,
    f2_derivative,
    lp_cycle_profit,
    market_share_low_cycle,
    participation_floor,
    pool_sizes,
    profit_difference,
    solve_cycle_equilibrium,
)
from feetiers.logics.cycle_model.shortfall import (
    LambertCandidate,
    OptimalFeeReport,
    implementation_shortfall,
    lambert_candidates,
    menu_shortfall,
    optimal_single_fee,
    single_pool_is,
    single_pool_supply,
)
from feetiers.logics.cycle_model.strategy import CycleModelStrategy

__all__ = [
    "comparative_statics",
    "cycle_durations",
    "f1",
    "f1_root",
    "f2",
    "f2_derivative",
    "lp_cycle_profit",
    "market_share_low_cycle",
    "participation_floor",
    "pool_sizes",
    "profit_difference",
    "solve_cycle_equilibrium",
    "LambertCandidate",
    "OptimalFeeReport",
    "implementation_shortfall",
    "lambert_candidates",
    "menu_shortfall",
    "optimal_single_fee",
    "single_pool_is",
    "single_pool_supply",
    "CycleModelStrategy",
]
