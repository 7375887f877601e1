from feetiers.logics.range_model.equilibrium import (
    AssumptionViolation,
    GftComparison,
    check_assumptions,
    eta_threshold,
    gains_from_trade,
    gft_compare,
    lp_profit,
    marginal_lp,
    marginal_lp_bisection,
    market_share_low,
    participation_thresholds,
    profit_difference,
    solve_equilibrium,
)
from feetiers.logics.range_model.shock import shock_atom, shock_mean, shock_pdf, shock_sample
from feetiers.logics.range_model.strategy import RangeModelStrategy
from feetiers.logics.range_model.yields import (
    adverse_selection,
    gft_per_unit,
    liquidity_yield,
    rebalance_cost,
    tau_star,
    trade_fraction,
    trade_fraction_array,
    yield_threshold,
)

__all__ = [
    "AssumptionViolation",
    "GftComparison",
    "check_assumptions",
    "eta_threshold",
    "gains_from_trade",
    "gft_compare",
    "lp_profit",
    "marginal_lp",
    "marginal_lp_bisection",
    "market_share_low",
    "participation_thresholds",
    "profit_difference",
    "solve_equilibrium",
    "shock_atom",
    "shock_mean",
    "shock_pdf",
    "shock_sample",
    "RangeModelStrategy",
    "adverse_selection",
    "gft_per_unit",
    "liquidity_yield",
    "rebalance_cost",
    "tau_star",
    "trade_fraction",
    "trade_fraction_array",
    "yield_threshold",
]
