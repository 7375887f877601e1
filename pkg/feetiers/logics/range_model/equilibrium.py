import math

from loguru import logger
from pydantic import BaseModel, Field

from feetiers.exceptions import InfeasibleModelError
from feetiers.logics.common.numerics import bisect, expand_bracket
from feetiers.logics.range_model.yields import (
    adverse_selection,
    gft_per_unit,
    liquidity_yield,
    rebalance_cost,
    yield_threshold,
)
from feetiers.schema import PoolSide, RangeEquilibrium, RangeModelParams, RangeRegime


class AssumptionViolation(BaseModel):
    field: str = Field(..., description="Parameter responsible for the violation.")
    invariant: str = Field(..., description="Inequality that fails.")
    value: float = Field(..., description="Offending value.")


class GftComparison(BaseModel):
    single: float = Field(..., description="Gains from trade with one pool at fee f.")
    menu: float = Field(..., description="Gains from trade with the menu {h=f, ell}.")

    @property
    def difference(self) -> float:
        return self.menu - self.single


def _fee(side: PoolSide, params: RangeModelParams) -> float:
    return params.ell if side == PoolSide.LOW else params.h


def profit_margin(side: PoolSide, params: RangeModelParams) -> float:
    """Slope of the LP profit in q: (1-eta)*L(f) - eta*A(f)."""
    f = _fee(side, params)
    return (1.0 - params.eta) * liquidity_yield(f, params) - params.eta * adverse_selection(f, params)


def lp_profit(q: float, side: PoolSide, params: RangeModelParams) -> float:
    f = _fee(side, params)
    return q * profit_margin(side, params) - params.eta * rebalance_cost(f, params)


def participation_threshold(side: PoolSide, params: RangeModelParams) -> float:
    """Endowment at which the LP profit on ``side`` is zero; negative or infinite means not viable."""
    margin = profit_margin(side, params)
    cost = params.eta * rebalance_cost(_fee(side, params), params)
    if margin == 0.0:
        return math.inf if cost > 0 else 0.0
    return cost / margin


def participation_thresholds(params: RangeModelParams) -> tuple[float, float]:
    return participation_threshold(PoolSide.LOW, params), participation_threshold(PoolSide.HIGH, params)


def profit_difference(q: float, params: RangeModelParams) -> float:
    return lp_profit(q, PoolSide.LOW, params) - lp_profit(q, PoolSide.HIGH, params)


def eta_threshold(params: RangeModelParams) -> float:
    yield_gap = liquidity_yield(params.ell, params) - liquidity_yield(params.h, params)
    selection_gap = adverse_selection(params.ell, params) - adverse_selection(params.h, params)
    return yield_gap / (yield_gap + selection_gap)


def check_assumptions(params: RangeModelParams) -> list[AssumptionViolation]:
    violations = []
    band = (1.0 + params.r) * math.sqrt(1.0 + params.h)
    if not params.Delta > band:
        violations.append(
            AssumptionViolation(field="Delta", invariant=f"Delta > (1 + r) * sqrt(1 + h) = {band}", value=params.Delta)
        )
        return violations

    viable = min(
        liquidity_yield(f, params) / (liquidity_yield(f, params) + adverse_selection(f, params))
        for f in (params.ell, params.h)
    )
    if not params.eta <= viable:
        violations.append(
            AssumptionViolation(field="eta", invariant=f"eta <= min_k L(f_k)/(L(f_k)+A(f_k)) = {viable}", value=params.eta)
        )
    return violations


def supply_above(q: float, lambda_endow: float) -> float:
    """Integral of q * exp(-q/lambda)/lambda over (q, inf)."""
    return math.exp(-q / lambda_endow) * (q + lambda_endow)


def mass_above(q: float, lambda_endow: float) -> float:
    return math.exp(-q / lambda_endow)


def marginal_lp(params: RangeModelParams) -> float | None:
    """Closed-form cutoff q_t, or None when the low-fee pool cannot attract anyone."""
    slope = (1.0 - params.eta) * (
        liquidity_yield(params.ell, params) - liquidity_yield(params.h, params)
    ) + params.eta * (adverse_selection(params.h, params) - adverse_selection(params.ell, params))
    if slope <= 0.0:
        return None
    gas_gap = params.Gamma * (1.0 + params.r) * (math.sqrt(1.0 + params.h) - math.sqrt(1.0 + params.ell))
    return params.eta * gas_gap / (params.Delta * slope)


def marginal_lp_bisection(params: RangeModelParams) -> float:
    """Root of the profit difference, bracketed upward from the pool-H participation threshold."""
    lower = max(participation_threshold(PoolSide.HIGH, params), 0.0)
    left, right = expand_bracket(lambda q: profit_difference(q, params), lower, lower + params.lambda_endow)
    return bisect(lambda q: profit_difference(q, params), left, right)


def solve_equilibrium(params: RangeModelParams) -> RangeEquilibrium:
    violations = check_assumptions(params)
    if violations:
        first = violations[0]
        logger.warning(f"Assumption violated: {first.field} ({first.invariant})")
        raise InfeasibleModelError(first.field, first.invariant, first.value)

    q_lo_l, q_lo_h = participation_thresholds(params)
    lam = params.lambda_endow
    f_bar = yield_threshold(params)
    q_t = marginal_lp(params)
    common = dict(
        q_lo_h=q_lo_h,
        q_lo_l=q_lo_l,
        eta_threshold=eta_threshold(params),
        yield_threshold=f_bar,
        low_fee_above_threshold=params.ell > f_bar,
        high_fee_above_threshold=params.h > f_bar,
    )

    if q_t is None:
        logger.info(f"Range equilibrium: AllHigh (eta={params.eta} above threshold)")
        return RangeEquilibrium(
            regime=RangeRegime.ALL_HIGH,
            q_t=None,
            w_low=0.0,
            pool_supply_low=0.0,
            pool_supply_high=supply_above(q_lo_h, lam),
            lp_mass_low=0.0,
            lp_mass_high=mass_above(q_lo_h, lam),
            **common,
        )

    tol = 1e-12 * max(1.0, q_t)
    if not (q_lo_h - tol <= q_lo_l <= q_t + tol):
        raise InfeasibleModelError("q_t", "q_lo_h <= q_lo_l <= q_t", (q_lo_h, q_lo_l, q_t))

    supply_low = supply_above(q_t, lam)
    supply_high = max(supply_above(q_lo_h, lam) - supply_low, 0.0)
    equilibrium = RangeEquilibrium(
        regime=RangeRegime.FRAGMENTED,
        q_t=q_t,
        w_low=min(1.0, market_share(q_t, q_lo_h, lam)),
        pool_supply_low=supply_low,
        pool_supply_high=supply_high,
        lp_mass_low=mass_above(q_t, lam),
        lp_mass_high=max(mass_above(q_lo_h, lam) - mass_above(q_t, lam), 0.0),
        **common,
    )
    logger.info(f"Range equilibrium: Fragmented, q_t={q_t:.6g}, w_low={equilibrium.w_low:.6g}")
    return equilibrium


def market_share(q_t: float, q_lo_h: float, lambda_endow: float) -> float:
    return math.exp(-(q_t - q_lo_h) / lambda_endow) * (q_t + lambda_endow) / (q_lo_h + lambda_endow)


def market_share_low(eq: RangeEquilibrium, params: RangeModelParams) -> float:
    if eq.regime == RangeRegime.ALL_HIGH or eq.q_t is None:
        return 0.0
    return market_share(eq.q_t, eq.q_lo_h, params.lambda_endow)


def gains_from_trade(pools: list[tuple[float, float]], params: RangeModelParams) -> float:
    """Expected gains from trade of a private-value shock over pools given as (fee, supply) pairs."""
    return params.v * sum(supply * gft_per_unit(fee, params) for fee, supply in pools if supply > 0)


def gft_compare(params: RangeModelParams, f: float | None = None, ell: float | None = None) -> GftComparison:
    """Gains from trade of a single pool at fee ``f`` against the menu {h=f, ell}."""
    fee = params.h if f is None else f
    low = params.ell if ell is None else ell
    single_params = params.model_copy(update={"h": fee})
    q_lo = max(participation_threshold(PoolSide.HIGH, single_params), 0.0)
    single = gains_from_trade([(fee, supply_above(q_lo, params.lambda_endow))], params)
    if low >= fee:
        return GftComparison(single=single, menu=single)

    menu_params = RangeModelParams.model_validate({**params.model_dump(), "h": fee, "ell": low})
    eq = solve_equilibrium(menu_params)
    menu = gains_from_trade([(low, eq.pool_supply_low), (fee, eq.pool_supply_high)], params)
    return GftComparison(single=single, menu=menu)
