import math
from typing import Any

import pandas as pd
from loguru import logger

from feetiers.exceptions import InfeasibleModelError
from feetiers.logics.base import EquilibriumStrategy
from feetiers.logics.common.sweep import run_sweep
from feetiers.logics.range_model.equilibrium import (
    check_assumptions,
    gft_compare,
    marginal_lp_bisection,
    solve_equilibrium,
)
from feetiers.logics.range_model.yields import (
    adverse_selection,
    adverse_selection_quadrature,
    gft_per_unit,
    gft_per_unit_quadrature,
    liquidity_yield,
    liquidity_yield_quadrature,
)
from feetiers.schema import RangeModelParams, SweepAxis

QUADRATURE_RTOL = 1e-8


def evaluate_point(params: RangeModelParams) -> dict[str, Any]:
    """One sweep row: regime, cutoffs, market share and the single-pool versus menu gains from trade."""
    try:
        eq = solve_equilibrium(params)
        gft = gft_compare(params)
    except InfeasibleModelError as e:
        logger.warning(f"Infeasible sweep point: {e}")
        return {
            "regime": "Infeasible",
            "q_t": math.nan,
            "q_lo_h": math.nan,
            "w_low": math.nan,
            "gft_single": math.nan,
            "gft_menu": math.nan,
        }
    return {
        "regime": eq.regime.value,
        "q_t": eq.q_t if eq.q_t is not None else math.nan,
        "q_lo_h": eq.q_lo_h,
        "w_low": eq.w_low,
        "gft_single": gft.single,
        "gft_menu": gft.menu,
    }


class RangeModelStrategy(EquilibriumStrategy):
    def __init__(self, params: RangeModelParams):
        self.params = params

    def execute_baseline(self) -> dict[str, Any]:
        eq = solve_equilibrium(self.params)
        gft = gft_compare(self.params)
        result: dict[str, Any] = {
            "params": self.params.model_dump(),
            "equilibrium": eq.model_dump(mode="json"),
            "gft_single": gft.single,
            "gft_menu": gft.menu,
            "gft_difference": gft.difference,
        }
        if eq.q_t is not None:
            result["q_t_bisection"] = marginal_lp_bisection(self.params)
        logger.info(f"Range baseline: regime={eq.regime.value}, w_low={eq.w_low:.6g}")
        return result

    def execute_experiment(self, axis: SweepAxis, threads: int = 1) -> pd.DataFrame:
        return run_sweep(evaluate_point, self.params, axis, threads)

    def validate(self) -> bool:
        violations = check_assumptions(self.params)
        for violation in violations:
            logger.warning(f"Assumption violated at base point: {violation.field} ({violation.invariant})")
        if violations:
            return False

        pairs = [
            ("liquidity_yield", liquidity_yield, liquidity_yield_quadrature),
            ("adverse_selection", adverse_selection, adverse_selection_quadrature),
            ("gft_per_unit", gft_per_unit, gft_per_unit_quadrature),
        ]
        consistent = True
        for fee in (self.params.ell, self.params.h):
            for name, closed, quadrature in pairs:
                exact, numeric = closed(fee, self.params), quadrature(fee, self.params)
                if not math.isclose(exact, numeric, rel_tol=QUADRATURE_RTOL, abs_tol=1e-14):
                    logger.warning(f"{name}({fee}) closed form {exact} disagrees with quadrature {numeric}")
                    consistent = False
        return consistent
