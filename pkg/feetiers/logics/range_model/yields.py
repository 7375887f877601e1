import math

import numpy as np

from feetiers.exceptions import ParameterError
from feetiers.logics.common.numerics import integrate_pieces
from feetiers.logics.range_model.shock import shock_pdf
from feetiers.schema import RangeModelParams


def _check_fee(f: float) -> None:
    if f < 0:
        raise ParameterError("f", "f >= 0", f)


def _check_delta_assumption(f: float, params: RangeModelParams) -> None:
    if not params.Delta > (1.0 + params.r) * math.sqrt(1.0 + f):
        raise ParameterError("Delta", "Delta > (1 + r) * sqrt(1 + f)", params.Delta)


def depletion_threshold(f: float, r: float) -> float:
    """Shock above which an arbitrageur drains the whole range."""
    return (1.0 + f) * (1.0 + r) ** 2 - 1.0


def trade_fraction(delta: float, f: float, r: float) -> float:
    if delta <= f:
        return 0.0
    if r == 0.0:
        return 1.0
    fraction = (1.0 + r) / r * (1.0 - math.sqrt((1.0 + f) / (1.0 + delta)))
    return min(1.0, max(0.0, fraction))


def trade_fraction_array(delta: np.ndarray, f: float, r: float) -> np.ndarray:
    if r == 0.0:
        return (delta > f).astype(float)
    fraction = (1.0 + r) / r * (1.0 - np.sqrt((1.0 + f) / (1.0 + delta)))
    return np.clip(fraction, 0.0, 1.0)


def tau_star(delta: float, f: float, pool_tokens: float, r: float) -> float:
    """Profit-maximising token quantity bought from a pool of ``pool_tokens`` after a shock ``delta``."""
    if pool_tokens < 0:
        raise ParameterError("pool_tokens", "pool_tokens >= 0", pool_tokens)
    return pool_tokens * trade_fraction(delta, f, r)


def numeraire_cost(tau: float, pool_tokens: float, v: float, r: float) -> float:
    """Numeraire paid before fees for ``tau`` tokens out of ``pool_tokens``."""
    if tau <= 0:
        return 0.0
    return tau * pool_tokens * v * (1.0 + r) / (tau + (1.0 + r) * (pool_tokens - tau))


def trader_profit(tau: float, delta: float, f: float, pool_tokens: float, v: float, r: float) -> float:
    return tau * v * (1.0 + delta) - (1.0 + f) * numeraire_cost(tau, pool_tokens, v, r)


def fee_revenue(delta: float, f: float, pool_tokens: float, v: float, r: float) -> float:
    """Fee income f * n(tau*) from a single trade."""
    tau = tau_star(delta, f, pool_tokens, r)
    return f * numeraire_cost(tau, pool_tokens, v, r)


def liquidity_yield(f: float, params: RangeModelParams) -> float:
    """Expected fee revenue per unit of liquidity from private-value trades, counting the reversal."""
    _check_fee(f)
    r, Delta = params.r, params.Delta
    return params.v * f * (r + 1.0) * (2.0 * Delta - (r + 2.0) * math.sqrt(f + 1.0)) / Delta


def liquidity_yield_derivative(f: float, params: RangeModelParams) -> float:
    _check_fee(f)
    r, Delta = params.r, params.Delta
    s = math.sqrt(f + 1.0)
    return params.v * (r + 1.0) * (4.0 * Delta * s - (r + 2.0) * (2.0 + 3.0 * f)) / (2.0 * Delta * s)


def yield_threshold(params: RangeModelParams) -> float:
    """Fee at which the liquidity yield peaks: largest root of its derivative."""
    c = (params.r + 2.0) ** 2
    D2 = params.Delta**2
    return (-6.0 * c + 8.0 * D2 + 4.0 * math.sqrt(4.0 * D2 * D2 + 3.0 * D2 * c)) / (9.0 * c)


def adverse_selection(f: float, params: RangeModelParams) -> float:
    """Expected loss per unit of liquidity to arbitrageurs after common-value news."""
    _check_fee(f)
    _check_delta_assumption(f, params)
    r, Delta = params.r, params.Delta
    s = math.sqrt(f + 1.0)
    top = (Delta - s * (1.0 + r)) * (Delta**2 + Delta * s * (1.0 + r) + (f + 1.0) * (r - 2.0) * (r + 1.0))
    return params.v * (top + (f + 1.0) ** 1.5 * r**2 * (r + 1.0)) / (3.0 * Delta)


def adverse_selection_derivative(f: float, params: RangeModelParams) -> float:
    _check_fee(f)
    r, Delta = params.r, params.Delta
    s = math.sqrt(f + 1.0)
    return params.v * (r + 1.0) * (s * (r + 2.0) - 2.0 * Delta) / (2.0 * Delta)


def rebalance_cost(f: float, params: RangeModelParams) -> float:
    """Expected gas spent re-centring a range that news pushed out of band."""
    _check_fee(f)
    return params.Gamma * (1.0 - math.sqrt(1.0 + f) * (1.0 + params.r) / params.Delta)


def gft_per_unit(f: float, params: RangeModelParams) -> float:
    """E[delta * tau*/T]: gains from trade per unit of pool supply at fee ``f``, in units of v."""
    _check_fee(f)
    _check_delta_assumption(f, params)
    r, Delta = params.r, params.Delta
    s = math.sqrt(f + 1.0)
    if r == 0.0:
        return (2.0 * Delta**3 - 2.0 * s**3 - 6.0 * Delta + 6.0 * s) / (6.0 * Delta)
    log_term = 6.0 * s * (1.0 + r) * math.log1p(r)
    return (log_term + r * (2.0 * Delta**3 - 6.0 * Delta - s**3 * (1.0 + r) * (r + 2.0))) / (6.0 * Delta * r)


def gft_per_unit_derivative(f: float, params: RangeModelParams) -> float:
    _check_fee(f)
    r, Delta = params.r, params.Delta
    s = math.sqrt(f + 1.0)
    if r == 0.0:
        return -f / (2.0 * Delta * s)
    return -(r + 1.0) * ((f + 1.0) * r * (r + 2.0) - 2.0 * math.log1p(r)) / (4.0 * Delta * s * r)


def _breakpoints(f: float, params: RangeModelParams) -> list[float]:
    top = params.Delta**2 - 1.0
    return [f, min(depletion_threshold(f, params.r), top), top]


def liquidity_yield_quadrature(f: float, params: RangeModelParams) -> float:
    r = params.r

    def integrand(delta: float) -> float:
        if r == 0.0:
            ratio = 1.0
        else:
            ratio = min(1.0 + r, (1.0 + r) / r * max(0.0, math.sqrt((1.0 + delta) / (1.0 + f)) - 1.0))
        return ratio * shock_pdf(delta, params.Delta)

    return 2.0 * f * params.v * integrate_pieces(integrand, _breakpoints(f, params))


def adverse_selection_quadrature(f: float, params: RangeModelParams) -> float:
    r = params.r
    upper = depletion_threshold(f, r)

    def integrand(delta: float) -> float:
        if delta <= upper and r > 0.0:
            loss = (1.0 + r) / r * ((1.0 + f) + (1.0 + delta) - 2.0 * math.sqrt((1.0 + delta) * (1.0 + f)))
        else:
            loss = (1.0 + delta) - (1.0 + f) * (1.0 + r)
        return loss * shock_pdf(delta, params.Delta)

    return params.v * integrate_pieces(integrand, _breakpoints(f, params))


def rebalance_cost_quadrature(f: float, params: RangeModelParams) -> float:
    top = params.Delta**2 - 1.0
    lower = min(depletion_threshold(f, params.r), top)
    return params.Gamma * integrate_pieces(lambda d: shock_pdf(d, params.Delta), [lower, top])


def gft_per_unit_quadrature(f: float, params: RangeModelParams) -> float:
    def integrand(delta: float) -> float:
        return delta * trade_fraction(delta, f, params.r) * shock_pdf(delta, params.Delta)

    return integrate_pieces(integrand, _breakpoints(f, params))
