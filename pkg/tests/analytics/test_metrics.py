import math

import pytest

from feetiers.analytics.metrics import gas_benchmark, liquidity_yield_daily, range_volatility
from feetiers.exceptions import ParameterError


def test_range_volatility() -> None:
    assert range_volatility(2.0, 1.0) == pytest.approx(math.sqrt(math.log(2.0)) / 2.0, abs=1e-12)
    assert range_volatility(5.0, 5.0) == 0.0


def test_range_volatility_invalid() -> None:
    with pytest.raises(ParameterError):
        range_volatility(1.0, 0.0)
    with pytest.raises(ParameterError):
        range_volatility(1.0, 2.0)


def test_liquidity_yield_daily() -> None:
    assert liquidity_yield_daily(0.5, 1.0, 30) == pytest.approx(15.0)
    assert liquidity_yield_daily(1.0, 0.0, 30) is None


def test_gas_benchmark() -> None:
    assert gas_benchmark([5.0, 1.0, 3.0, 2.0], n_lowest=2) == pytest.approx(1.5)
    assert gas_benchmark([4.0], n_lowest=10) == 4.0
    assert gas_benchmark([]) is None
    with pytest.raises(ParameterError):
        gas_benchmark([1.0], n_lowest=0)
