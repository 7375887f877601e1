import math

from feetiers.exceptions import ParameterError, TickExhaustedError


def _check_range(p_lo: float, p_hi: float) -> None:
    if not 0 < p_lo < p_hi:
        raise ParameterError("range", "0 < p_lo < p_hi", (p_lo, p_hi))


def deposit_amounts(liquidity: float, p_lo: float, p_hi: float, price: float) -> tuple[float, float]:
    """Token and numeraire amounts held by a position of size ``liquidity`` at ``price``.

    Args:
        liquidity (float): position liquidity L.
        p_lo (float): lower price of the range.
        p_hi (float): upper price of the range.
        price (float): current pool price.

    Returns:
        tuple[float, float]: (token amount x, numeraire amount y)
    """
    _check_range(p_lo, p_hi)
    if liquidity < 0:
        raise ParameterError("liquidity", "liquidity >= 0", liquidity)
    if price <= 0:
        raise ParameterError("price", "price > 0", price)

    sqrt_lo, sqrt_hi = math.sqrt(p_lo), math.sqrt(p_hi)
    if price <= p_lo:
        return liquidity * (1.0 / sqrt_lo - 1.0 / sqrt_hi), 0.0
    if price <= p_hi:
        sqrt_p = math.sqrt(price)
        return liquidity * (1.0 / sqrt_p - 1.0 / sqrt_hi), liquidity * (sqrt_p - sqrt_lo)
    return 0.0, liquidity * (sqrt_hi - sqrt_lo)


def liquidity_for_capital(capital: float, p_lo: float, p_hi: float, price: float, token_value: float) -> float:
    """Liquidity L whose deposit is worth ``capital`` numeraire when the token is marked at ``token_value``."""
    if capital <= 0:
        raise ParameterError("capital", "capital > 0", capital)
    unit_x, unit_y = deposit_amounts(1.0, p_lo, p_hi, price)
    unit_value = token_value * unit_x + unit_y
    if unit_value <= 0:
        raise ParameterError("token_value", "token_value * x(1) + y(1) > 0", token_value)
    return capital / unit_value


def price_after_buy_within_tick(p_min: float, liquidity: float, token_bought: float) -> float:
    """Price after buying ``token_bought`` from a tick that starts at ``p_min`` with liquidity L."""
    if p_min <= 0:
        raise ParameterError("p_min", "p_min > 0", p_min)
    if liquidity <= 0:
        raise ParameterError("liquidity", "liquidity > 0", liquidity)
    if token_bought < 0:
        raise ParameterError("token_bought", "token_bought >= 0", token_bought)

    sqrt_min = math.sqrt(p_min)
    remaining = liquidity - sqrt_min * token_bought
    if remaining <= 0:
        raise TickExhaustedError(requested=token_bought, available=liquidity / sqrt_min)
    return p_min * liquidity**2 / remaining**2


def virtual_reserves(liquidity: float, sqrt_price: float, sqrt_lo: float, sqrt_hi: float) -> tuple[float, float]:
    """Virtual (x, y) of a tick whose product equals L**2 while the price stays inside [sqrt_lo, sqrt_hi]."""
    x_real = liquidity * (1.0 / sqrt_price - 1.0 / sqrt_hi)
    y_real = liquidity * (sqrt_price - sqrt_lo)
    return x_real + liquidity / sqrt_hi, y_real + liquidity * sqrt_lo
