import math

import pytest

from feetiers.exceptions import ParameterError, TickExhaustedError
from feetiers.pool.liquidity import (
    deposit_amounts,
    liquidity_for_capital,
    price_after_buy_within_tick,
    virtual_reserves,
)
from feetiers.pool.tick import tick_to_price

PRICE = tick_to_price(73140)
RANGE_A = (tick_to_price(73080), tick_to_price(73320))
RANGE_B = (tick_to_price(73200), tick_to_price(73320))


class TestDepositAmounts:
    def test_straddling_range(self) -> None:
        x, y = deposit_amounts(43188.6, 1491.64, 1527.87, 1500.62)
        assert x == pytest.approx(9.99, rel=1e-3)
        assert y == pytest.approx(5013.38, rel=1e-3)

    def test_range_above_price_holds_only_token(self) -> None:
        x, y = deposit_amounts(86589.4, *RANGE_B, PRICE)
        assert x == pytest.approx(13.34, rel=2e-3)
        assert y == 0.0

    def test_range_below_price_holds_only_numeraire(self) -> None:
        x, y = deposit_amounts(1000.0, *RANGE_A, RANGE_A[1] * 1.1)
        assert x == 0.0
        assert y == pytest.approx(1000.0 * (math.sqrt(RANGE_A[1]) - math.sqrt(RANGE_A[0])))

    def test_zero_liquidity(self) -> None:
        assert deposit_amounts(0.0, *RANGE_A, PRICE) == (0.0, 0.0)

    def test_continuous_at_boundaries(self) -> None:
        for edge in RANGE_A:
            below = deposit_amounts(500.0, *RANGE_A, edge * (1 - 1e-12))
            above = deposit_amounts(500.0, *RANGE_A, edge * (1 + 1e-12))
            assert below[0] == pytest.approx(above[0], abs=1e-6)
            assert below[1] == pytest.approx(above[1], abs=1e-6)

    def test_invalid_range(self) -> None:
        with pytest.raises(ParameterError):
            deposit_amounts(1.0, 2.0, 1.0, 1.5)


class TestLiquidityForCapital:
    def test_reference_positions(self) -> None:
        assert liquidity_for_capital(20000.0, *RANGE_A, PRICE, PRICE) == pytest.approx(43188.6, rel=1e-3)
        assert liquidity_for_capital(20000.0, *RANGE_B, PRICE, PRICE) == pytest.approx(86589.4, rel=1e-3)

    def test_linear_in_capital(self) -> None:
        single = liquidity_for_capital(20000.0, *RANGE_A, PRICE, PRICE)
        assert liquidity_for_capital(40000.0, *RANGE_A, PRICE, PRICE) == pytest.approx(2.0 * single, rel=1e-12)

    def test_capital_must_be_positive(self) -> None:
        with pytest.raises(ParameterError):
            liquidity_for_capital(0.0, *RANGE_A, PRICE, PRICE)


class TestPriceAfterBuy:
    def test_no_trade(self) -> None:
        assert price_after_buy_within_tick(1509.65, 129778.0, 0.0) == 1509.65

    def test_price_stays_inside_next_tick(self) -> None:
        price = price_after_buy_within_tick(1509.65, 129778.0, 6.67)
        assert 1509.65 < price < 1518.73

    def test_exhausted_depth(self) -> None:
        depth = 129778.0 / math.sqrt(1509.65)
        with pytest.raises(TickExhaustedError):
            price_after_buy_within_tick(1509.65, 129778.0, depth)


def test_virtual_reserves_product() -> None:
    liquidity = 1234.5
    sqrt_lo, sqrt_hi = math.sqrt(RANGE_A[0]), math.sqrt(RANGE_A[1])
    x, y = virtual_reserves(liquidity, math.sqrt(PRICE), sqrt_lo, sqrt_hi)
    assert x * y == pytest.approx(liquidity**2, rel=1e-12)
    assert y / x == pytest.approx(PRICE, rel=1e-12)
