from dataclasses import dataclass

import numpy as np

from feetiers.logics.range_model.shock import shock_sample
from feetiers.logics.range_model.yields import trade_fraction_array
from feetiers.schema import RangeEquilibrium, RangeModelParams


@dataclass
class PoolTrace:
    """Per-event outcomes on one pool, per unit of posted liquidity unless noted."""

    supply: float
    tokens: np.ndarray
    lp_profit: np.ndarray
    rebalanced: np.ndarray
    gas_spent: np.ndarray
    lp_net_profit: np.ndarray


@dataclass
class RangeTrace:
    news: np.ndarray
    delta: np.ndarray
    low: PoolTrace
    high: PoolTrace
    gains: np.ndarray


def _pool_outcomes(
    delta: np.ndarray, news: np.ndarray, fee: float, supply: float, lp_mass: float, params: RangeModelParams
) -> PoolTrace:
    r, v = params.r, params.v
    frac = trade_fraction_array(delta, fee, r)
    # numeraire paid before fees per unit of liquidity; tends to v(1+r) as the range is emptied
    paid = np.divide(v * (1.0 + r) * frac, frac + (1.0 + r) * (1.0 - frac), out=np.zeros_like(frac), where=frac > 0)
    revenue = 2.0 * fee * paid
    loss = v * (1.0 + delta) * frac - (1.0 + fee) * paid
    rebalanced = news & (frac >= 1.0) & (supply > 0)
    lp_profit = np.where(news, -loss, revenue)
    # every LP on the pool pays Gamma to re-centre, spread over the pool supply
    gas_spent = np.where(rebalanced, params.Gamma * lp_mass, 0.0)
    net = lp_profit - gas_spent / supply if supply > 0 else np.zeros_like(lp_profit)
    return PoolTrace(
        supply=supply,
        tokens=frac * supply,
        lp_profit=lp_profit,
        rebalanced=rebalanced,
        gas_spent=gas_spent,
        lp_net_profit=net,
    )


def simulate_range(
    params: RangeModelParams, eq: RangeEquilibrium, horizon: int, rng: np.random.Generator
) -> RangeTrace:
    """Draw ``horizon`` unit-rate shock events against the equilibrium pool supplies.

    News shocks are arbitraged without reversal and trigger a rebalance on every pool whose range they empty.
    Private-value shocks are traded and reversed, so the pool earns the fee twice.
    """
    news = rng.random(horizon) < params.eta
    delta = np.asarray(shock_sample(rng, params.Delta, size=horizon), dtype=float)
    low = _pool_outcomes(delta, news, params.ell, eq.pool_supply_low, eq.lp_mass_low, params)
    high = _pool_outcomes(delta, news, params.h, eq.pool_supply_high, eq.lp_mass_high, params)
    gains = np.where(news, 0.0, params.v * delta * (low.tokens + high.tokens))
    return RangeTrace(news=news, delta=delta, low=low, high=high, gains=gains)
