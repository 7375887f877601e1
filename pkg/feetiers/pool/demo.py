from loguru import logger
from pydantic import BaseModel, Field

from feetiers.pool.engine import swap_buy_token
from feetiers.pool.state import PoolState
from feetiers.pool.tick import tick_to_price

DEMO_CURRENT_TICK = 73140
DEMO_TICK_SPACING = 60
DEMO_FEE_BPS = 100
DEMO_CAPITAL = 20000.0
DEMO_RANGE_A = (73080, 73320)
DEMO_RANGE_B = (73200, 73320)
DEMO_TOKEN_QTY = 10.0


class PoolDemoReport(BaseModel):
    current_price: float = Field(..., description="Starting pool price.")
    tick_prices: list[float] = Field(..., description="Grid prices around the starting tick.")
    liquidity_a: float = Field(..., description="Liquidity of provider A.")
    liquidity_b: float = Field(..., description="Liquidity of provider B.")
    deposit_a_token: float = Field(..., description="Token deposited by A.")
    deposit_a_numeraire: float = Field(..., description="Numeraire deposited by A.")
    deposit_b_token: float = Field(..., description="Token deposited by B.")
    fill_numeraire: list[float] = Field(..., description="Numeraire deposited per constant-liquidity fill.")
    fill_token: list[float] = Field(..., description="Token bought per fill.")
    fill_fee: list[float] = Field(..., description="Fee charged per fill.")
    fill_average_price: list[float] = Field(..., description="Average execution price per fill.")
    end_price: float = Field(..., description="Pool price after the trade.")
    fee_total: float = Field(..., description="Total fee paid by the buyer.")
    fee_a: float = Field(..., description="Fee accrued to A.")
    fee_b: float = Field(..., description="Fee accrued to B.")
    second_fill_fee_a: float = Field(..., description="A's share of the fee on the jointly provided tick.")
    second_fill_fee_b: float = Field(..., description="B's share of the fee on the jointly provided tick.")


def run_pool_demo() -> PoolDemoReport:
    """Two providers on a 60-tick grid at a 1% fee, then a buyer takes 10 tokens across two ticks."""
    price = tick_to_price(DEMO_CURRENT_TICK)
    pool = PoolState.from_fee_tier(DEMO_FEE_BPS, price, tick_spacing=DEMO_TICK_SPACING)
    pool, position_a = pool.mint_capital("A", *DEMO_RANGE_A, capital=DEMO_CAPITAL)
    pool, position_b = pool.mint_capital("B", *DEMO_RANGE_B, capital=DEMO_CAPITAL)

    deposit_a = position_a.amounts(price)
    deposit_b = position_b.amounts(price)
    _, receipt = swap_buy_token(pool, DEMO_TOKEN_QTY)

    joint_fee = receipt.fills[-1].fee
    joint_liquidity = receipt.fills[-1].liquidity
    report = PoolDemoReport(
        current_price=price,
        tick_prices=[tick_to_price(t) for t in range(73080, 73320 + 1, DEMO_TICK_SPACING)],
        liquidity_a=position_a.liquidity,
        liquidity_b=position_b.liquidity,
        deposit_a_token=deposit_a[0],
        deposit_a_numeraire=deposit_a[1],
        deposit_b_token=deposit_b[0],
        fill_numeraire=[f.numeraire_amount for f in receipt.fills],
        fill_token=[f.token_amount for f in receipt.fills],
        fill_fee=[f.fee for f in receipt.fills],
        fill_average_price=[f.numeraire_amount / f.token_amount for f in receipt.fills],
        end_price=receipt.end_price,
        fee_total=receipt.fee_paid,
        fee_a=receipt.per_provider_fees.get("A", 0.0),
        fee_b=receipt.per_provider_fees.get("B", 0.0),
        second_fill_fee_a=joint_fee * position_a.liquidity / joint_liquidity,
        second_fill_fee_b=joint_fee * position_b.liquidity / joint_liquidity,
    )
    logger.info(f"Pool demo: L_A={report.liquidity_a:.1f}, L_B={report.liquidity_b:.1f}, end price {report.end_price:.2f}")
    return report
