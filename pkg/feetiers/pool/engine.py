import math
from dataclasses import dataclass, field

from loguru import logger

from feetiers.constants import DEPTH_EXHAUSTION_RTOL
from feetiers.exceptions import InsufficientDepthError, ParameterError
from feetiers.pool.state import PoolState, Position, SwapReceipt, TickFill
from feetiers.pool.tick import tick_to_price


@dataclass
class _Walk:
    end_sqrt_price: float
    filled: float = 0.0
    numeraire: float = 0.0
    fee: float = 0.0
    fills: list[TickFill] = field(default_factory=list)
    position_fees: dict[int, float] = field(default_factory=dict)


def _active(pool: PoolState, sqrt_price: float, upward: bool) -> list[tuple[int, Position]]:
    active = []
    for idx, position in enumerate(pool.positions):
        if position.liquidity <= 0:
            continue
        lower, upper = math.sqrt(position.price_lower), math.sqrt(position.price_upper)
        if (upward and lower <= sqrt_price < upper) or (not upward and lower < sqrt_price <= upper):
            active.append((idx, position))
    return active


def _next_boundary(pool: PoolState, sqrt_price: float, upward: bool) -> float | None:
    prices = [math.sqrt(tick_to_price(t)) for t in pool.boundary_ticks()]
    if upward:
        above = [s for s in prices if s > sqrt_price]
        return min(above) if above else None
    below = [s for s in prices if s < sqrt_price]
    return max(below) if below else None


def _walk(pool: PoolState, token_qty: float, upward: bool, track_fees: bool = True) -> _Walk:
    sqrt_p = math.sqrt(pool.current_price)
    walk = _Walk(end_sqrt_price=sqrt_p)
    remaining = token_qty

    while remaining > 0:
        sqrt_b = _next_boundary(pool, sqrt_p, upward)
        if sqrt_b is None:
            break
        active = _active(pool, sqrt_p, upward)
        liquidity = sum(p.liquidity for _, p in active)
        if liquidity <= 0:
            sqrt_p = sqrt_b
            continue

        if upward:
            depth = liquidity * (1.0 / sqrt_p - 1.0 / sqrt_b)
        else:
            depth = liquidity * (1.0 / sqrt_b - 1.0 / sqrt_p)

        if remaining >= depth * (1.0 - DEPTH_EXHAUSTION_RTOL):
            token = depth
            sqrt_next = sqrt_b
        else:
            token = remaining
            if upward:
                sqrt_next = 1.0 / (1.0 / sqrt_p - token / liquidity)
            else:
                sqrt_next = 1.0 / (1.0 / sqrt_p + token / liquidity)

        numeraire = liquidity * abs(sqrt_next - sqrt_p)
        fee = pool.fee_fraction * numeraire
        walk.fills.append(
            TickFill(
                start_price=sqrt_p * sqrt_p,
                end_price=sqrt_next * sqrt_next,
                liquidity=liquidity,
                token_amount=token,
                numeraire_amount=numeraire,
                fee=fee,
            )
        )
        if track_fees and fee > 0:
            for idx, position in active:
                walk.position_fees[idx] = walk.position_fees.get(idx, 0.0) + fee * position.liquidity / liquidity

        walk.filled += token
        walk.numeraire += numeraire
        walk.fee += fee
        remaining = max(remaining - token, 0.0)
        sqrt_p = sqrt_next

    walk.end_sqrt_price = sqrt_p
    return walk


def _check_depth(requested: float, available: float, allow_partial: bool) -> float:
    if requested <= available * (1.0 + DEPTH_EXHAUSTION_RTOL):
        return min(requested, available) if requested > available else requested
    if allow_partial:
        logger.debug(f"Partial fill: requested {requested}, available {available}")
        return available
    raise InsufficientDepthError(requested=requested, available=available)


def _settle(pool: PoolState, walk: _Walk, side: str, token_qty: float) -> tuple[PoolState, SwapReceipt]:
    positions = list(pool.positions)
    per_provider: dict[str, float] = {}
    for idx, fee in walk.position_fees.items():
        position = positions[idx]
        positions[idx] = position.model_copy(update={"fees_owed_numeraire": position.fees_owed_numeraire + fee})
        per_provider[position.owner] = per_provider.get(position.owner, 0.0) + fee

    end_price = walk.end_sqrt_price * walk.end_sqrt_price
    new_pool = pool.model_copy(update={"current_price": end_price, "positions": tuple(positions)})
    crossed = abs(pool.grid.index_of(end_price) - pool.grid.index_of(pool.current_price))
    if side == "buy":
        amount_in, amount_out = walk.numeraire, walk.filled
    else:
        amount_in, amount_out = walk.filled, walk.numeraire - walk.fee
    receipt = SwapReceipt(
        side=side,
        amount_in=amount_in,
        amount_out=amount_out,
        fee_paid=walk.fee,
        ticks_crossed=crossed,
        start_price=pool.current_price,
        end_price=end_price,
        per_provider_fees=per_provider,
        fills=walk.fills,
    )
    return new_pool, receipt


def swap_buy_token(pool: PoolState, token_qty: float, allow_partial: bool = False) -> tuple[PoolState, SwapReceipt]:
    """Buy ``token_qty`` tokens with numeraire, walking the ranges above the current price.

    Args:
        pool (PoolState): pool before the trade.
        token_qty (float): tokens requested by the buyer.
        allow_partial (bool): fill up to the posted depth instead of raising when depth is short.

    Returns:
        tuple[PoolState, SwapReceipt]: pool after the trade and the receipt.
    """
    if token_qty < 0:
        raise ParameterError("token_qty", "token_qty >= 0", token_qty)
    qty = _check_depth(token_qty, pool.token_depth_above(), allow_partial)
    walk = _walk(pool, qty, upward=True)
    return _settle(pool, walk, "buy", qty)


def swap_sell_token(pool: PoolState, token_qty: float, allow_partial: bool = False) -> tuple[PoolState, SwapReceipt]:
    """Sell ``token_qty`` tokens for numeraire; the fee is withheld from the numeraire paid out."""
    if token_qty < 0:
        raise ParameterError("token_qty", "token_qty >= 0", token_qty)
    available = _sell_capacity(pool)
    qty = _check_depth(token_qty, available, allow_partial)
    walk = _walk(pool, qty, upward=False)
    return _settle(pool, walk, "sell", qty)


def _sell_capacity(pool: PoolState) -> float:
    """Tokens the pool absorbs before the numeraire below the price runs out."""
    sqrt_p = math.sqrt(pool.current_price)
    total = 0.0
    for position in pool.positions:
        sqrt_lo = math.sqrt(position.price_lower)
        sqrt_hi = math.sqrt(position.price_upper)
        top = min(sqrt_p, sqrt_hi)
        if top > sqrt_lo:
            total += position.liquidity * (1.0 / sqrt_lo - 1.0 / top)
    return total


def quote_buy_cost(pool: PoolState, token_qty: float) -> float:
    """Numeraire cost including fees of buying ``token_qty``, without building the new state."""
    if token_qty <= 0:
        return 0.0
    qty = _check_depth(token_qty, pool.token_depth_above(), allow_partial=False)
    walk = _walk(pool, qty, upward=True, track_fees=False)
    return walk.numeraire + walk.fee
