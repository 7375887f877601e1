import math

import numpy as np
import pytest

from feetiers.exceptions import InfeasibleModelError
from feetiers.logics.range_model.equilibrium import (
    check_assumptions,
    eta_threshold,
    gft_compare,
    lp_profit,
    marginal_lp,
    marginal_lp_bisection,
    market_share,
    market_share_low,
    participation_thresholds,
    profit_difference,
    solve_equilibrium,
    supply_above,
)
from feetiers.logics.range_model.yields import gft_per_unit
from feetiers.schema import PoolSide, RangeModelParams, RangeRegime


class TestSolveEquilibrium:
    def test_fragmented_defaults(self, range_params: RangeModelParams) -> None:
        eq = solve_equilibrium(range_params)
        assert eq.regime == RangeRegime.FRAGMENTED
        assert eq.q_t == pytest.approx(2.814, rel=1e-3)
        assert eq.q_lo_h <= eq.q_lo_l <= eq.q_t
        assert 0.0 < eq.w_low < 1.0

    def test_closed_form_matches_bisection(self, range_params: RangeModelParams) -> None:
        q_t = marginal_lp(range_params)
        assert q_t is not None
        assert marginal_lp_bisection(range_params) == pytest.approx(q_t, rel=1e-9)
        assert profit_difference(q_t, range_params) == pytest.approx(0.0, abs=1e-10)

    def test_marginal_lp_is_indifferent(self, range_params: RangeModelParams) -> None:
        q_t = marginal_lp(range_params)
        assert q_t is not None
        assert lp_profit(q_t, PoolSide.LOW, range_params) == pytest.approx(
            lp_profit(q_t, PoolSide.HIGH, range_params), abs=1e-10
        )
        assert lp_profit(2.0 * q_t, PoolSide.LOW, range_params) > lp_profit(2.0 * q_t, PoolSide.HIGH, range_params)

    def test_all_high_above_eta_threshold(self, range_params: RangeModelParams) -> None:
        threshold = eta_threshold(range_params)
        params = range_params.model_copy(update={"eta": min(threshold + 0.1, 0.7)})
        eq = solve_equilibrium(params)
        assert eq.regime == RangeRegime.ALL_HIGH
        assert eq.w_low == 0.0
        assert market_share_low(eq, params) == 0.0
        assert eq.pool_supply_high == pytest.approx(supply_above(eq.q_lo_h, params.lambda_endow))

    def test_free_gas_captures_market(self, range_params: RangeModelParams) -> None:
        eq = solve_equilibrium(range_params.model_copy(update={"Gamma": 0.0}))
        assert eq.q_t == 0.0
        assert eq.w_low == pytest.approx(1.0)

    def test_share_vanishes_near_eta_threshold(self, range_params: RangeModelParams) -> None:
        threshold = eta_threshold(range_params)
        shares = [
            solve_equilibrium(range_params.model_copy(update={"eta": threshold - gap})).w_low
            for gap in (1e-1, 1e-2, 1e-3)
        ]
        assert shares[0] > shares[1] > shares[2]
        assert shares[2] < 1e-3

    def test_eta_violation_is_infeasible(self, range_params: RangeModelParams) -> None:
        with pytest.raises(InfeasibleModelError) as excinfo:
            solve_equilibrium(range_params.model_copy(update={"eta": 0.8}))
        assert excinfo.value.field == "eta"

    def test_delta_violation_is_infeasible(self, range_params: RangeModelParams) -> None:
        params = range_params.model_copy(update={"Delta": 1.5})
        violations = check_assumptions(params)
        assert [v.field for v in violations] == ["Delta"]
        with pytest.raises(InfeasibleModelError):
            solve_equilibrium(params)


class TestMarketShare:
    def test_boundaries(self) -> None:
        assert market_share(0.5, 0.5, 1.0) == pytest.approx(1.0)
        assert market_share(50.0, 0.5, 1.0) < 1e-15

    def test_matches_pool_supplies(self, range_params: RangeModelParams) -> None:
        eq = solve_equilibrium(range_params)
        total = eq.pool_supply_low + eq.pool_supply_high
        assert eq.w_low == pytest.approx(eq.pool_supply_low / total, rel=1e-12)

    def test_thresholds_ordered(self, range_params: RangeModelParams) -> None:
        low, high = participation_thresholds(range_params)
        assert 0.0 < high < low


class TestGainsFromTrade:
    def test_identical_pools(self, range_params: RangeModelParams) -> None:
        comparison = gft_compare(range_params, f=1.5, ell=1.5)
        assert comparison.difference == 0.0

    def test_menu_beats_single_pool(self, range_params: RangeModelParams) -> None:
        eq = solve_equilibrium(range_params)
        comparison = gft_compare(range_params)
        gap = gft_per_unit(range_params.ell, range_params) - gft_per_unit(range_params.h, range_params)
        assert comparison.difference > 0.0
        assert comparison.difference == pytest.approx(range_params.v * eq.pool_supply_low * gap, rel=1e-9)
        assert math.isfinite(comparison.single)


def _random_fragmented(rng: np.random.Generator, wanted: int) -> list[RangeModelParams]:
    draws: list[RangeModelParams] = []
    for _ in range(50 * wanted):
        ell = rng.uniform(0.05, 1.0)
        params = RangeModelParams(
            v=1.0,
            eta=rng.uniform(0.01, 0.2),
            lambda_endow=rng.uniform(0.5, 3.0),
            ell=ell,
            h=ell + rng.uniform(0.5, 2.0),
            r=rng.uniform(0.0005, 0.05),
            Delta=None,
            Gamma=rng.uniform(1.0, 50.0),
        )
        try:
            eq = solve_equilibrium(params)
        except InfeasibleModelError:
            continue
        if eq.regime == RangeRegime.FRAGMENTED:
            draws.append(params)
        if len(draws) == wanted:
            break
    return draws


def test_closed_form_matches_bisection_on_random_draws() -> None:
    draws = _random_fragmented(np.random.default_rng(2024), 50)
    assert len(draws) == 50
    for params in draws:
        q_t = marginal_lp(params)
        assert q_t is not None
        assert marginal_lp_bisection(params) == pytest.approx(q_t, rel=1e-8, abs=1e-10)


def test_gas_sweep_shrinks_low_share_and_keeps_menu_gains(range_params: RangeModelParams) -> None:
    shares, gaps = [], []
    for gamma in np.linspace(0.5, 40.0, 100):
        params = range_params.model_copy(update={"Gamma": float(gamma)})
        shares.append(solve_equilibrium(params).w_low)
        gaps.append(gft_compare(params).difference)
    assert np.all(np.diff(shares) < 0.0)
    assert min(gaps) >= 0.0


def test_profit_difference_changes_sign_at_marginal_lp(range_params: RangeModelParams) -> None:
    q_t = marginal_lp(range_params)
    assert q_t is not None
    assert profit_difference(0.99 * q_t, range_params) < 0.0 < profit_difference(1.01 * q_t, range_params)
