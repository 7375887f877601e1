import math

import pytest

from feetiers.exceptions import ParameterError
from feetiers.logics.cycle_model.equilibrium import solve_cycle_equilibrium
from feetiers.logics.cycle_model.shortfall import (
    implementation_shortfall,
    lambert_candidates,
    menu_shortfall,
    optimal_single_fee,
    single_pool_is,
    single_pool_is_derivative,
    single_pool_supply,
)
from feetiers.logics.common.numerics import central_difference
from feetiers.schema import CycleModelParams


class TestImplementationShortfall:
    def test_fees_plus_forgone_gains(self, cycle_params: CycleModelParams) -> None:
        value = implementation_shortfall([(0.5, 1.0), (1.0, 0.5)], cycle_params)
        assert value == pytest.approx(0.5 + 0.5 + cycle_params.Delta_gft * (cycle_params.Theta_big - 1.5))

    def test_empty_menu(self, cycle_params: CycleModelParams) -> None:
        with pytest.raises(ParameterError):
            implementation_shortfall([], cycle_params)


class TestSinglePool:
    def test_supply_bounds(self, cycle_params: CycleModelParams) -> None:
        assert single_pool_supply(0.1, cycle_params) == 0.0
        assert single_pool_supply(5.0, cycle_params) == pytest.approx(cycle_params.aggregate_supply)

    def test_negative_fee(self, cycle_params: CycleModelParams) -> None:
        with pytest.raises(ParameterError):
            single_pool_supply(-1.0, cycle_params)

    def test_derivative(self, cycle_params: CycleModelParams) -> None:
        numeric = central_difference(lambda f: single_pool_is(f, cycle_params), 0.7)
        assert single_pool_is_derivative(0.7, cycle_params) == pytest.approx(numeric, rel=1e-6)


class TestMenuShortfall:
    def test_equal_fees_collapse_to_single_pool(self, cycle_params: CycleModelParams) -> None:
        assert menu_shortfall(0.9, 0.9, cycle_params) == single_pool_is(0.9, cycle_params)

    def test_menu_saves_fees_on_low_pool(self, cycle_params: CycleModelParams) -> None:
        eq = solve_cycle_equilibrium(cycle_params)
        menu = menu_shortfall(cycle_params.h, cycle_params.ell, cycle_params)
        single = single_pool_is(cycle_params.h, cycle_params)
        assert menu - single == pytest.approx((cycle_params.ell - cycle_params.h) * eq.L_low, rel=1e-9)

    def test_inverted_menu(self, cycle_params: CycleModelParams) -> None:
        with pytest.raises(ParameterError):
            menu_shortfall(0.5, 0.9, cycle_params)


class TestOptimalSingleFee:
    def test_defaults_match_lambert_reading(self, cycle_params: CycleModelParams) -> None:
        report = optimal_single_fee(cycle_params)
        assert report.f_star == pytest.approx((math.sqrt(5.0) - 1.0) / 2.0, rel=1e-3)
        assert report.derivative == pytest.approx(0.0, abs=1e-5)
        assert report.matching_reading == "g / W0(e g Q / Gamma)"
        assert report.shortfall == pytest.approx(single_pool_is(report.f_star, cycle_params))

    def test_free_gas(self, cycle_params: CycleModelParams) -> None:
        report = optimal_single_fee(cycle_params.model_copy(update={"Gamma": 0.0}))
        assert report.f_star == 0.0
        assert report.lambert_candidates == []
        assert report.matching_reading is None

    def test_minimum_over_grid(self, cycle_params: CycleModelParams) -> None:
        report = optimal_single_fee(cycle_params)
        grid = [cycle_params.Gamma / cycle_params.Q + 0.01 * i for i in range(1, 60)]
        assert all(single_pool_is(f, cycle_params) >= report.shortfall - 1e-12 for f in grid)


def test_lambert_candidates_flag_complex_branch(cycle_params: CycleModelParams) -> None:
    candidates = {c.reading: c for c in lambert_candidates(0.618, cycle_params)}
    assert candidates["g / W_-1(e g Q / Gamma)"].value is None
    assert candidates["g * W0(e g Q / Gamma)"].matches is False
