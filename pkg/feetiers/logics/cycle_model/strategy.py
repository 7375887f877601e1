import math
from typing import Any

import pandas as pd
from loguru import logger

from feetiers.logics.base import EquilibriumStrategy
from feetiers.logics.common.sweep import run_sweep
from feetiers.logics.cycle_model.equilibrium import comparative_statics, f2, solve_cycle_equilibrium
from feetiers.logics.cycle_model.shortfall import menu_shortfall, optimal_single_fee, single_pool_is
from feetiers.schema import CycleModelParams, CycleRegime, SweepAxis

RESIDUAL_TOL = 1e-10


def evaluate_point(params: CycleModelParams) -> dict[str, Any]:
    eq = solve_cycle_equilibrium(params)
    return {
        "regime": eq.regime.value,
        "q_t": eq.q_t,
        "q_lo": eq.q_lo,
        "w_low": eq.w_low,
        "L_low": eq.L_low,
        "L_high": eq.L_high,
        "d_low": eq.d_low,
        "d_high": eq.d_high,
        "IS_single": single_pool_is(params.h, params),
        "IS_menu": menu_shortfall(params.h, params.ell, params),
        "f_star": optimal_single_fee(params).f_star,
        "boundary_flag": eq.boundary_flag,
    }


class CycleModelStrategy(EquilibriumStrategy):
    def __init__(self, params: CycleModelParams):
        self.params = params

    def execute_baseline(self) -> dict[str, Any]:
        eq = solve_cycle_equilibrium(self.params)
        result: dict[str, Any] = {
            "params": self.params.model_dump(),
            "equilibrium": eq.model_dump(mode="json"),
            "IS_single": single_pool_is(self.params.h, self.params),
            "IS_menu": menu_shortfall(self.params.h, self.params.ell, self.params),
            "optimal_fee": optimal_single_fee(self.params).model_dump(),
        }
        if eq.regime == CycleRegime.FRAGMENTED and not eq.boundary_flag:
            result["comparative_statics"] = comparative_statics(self.params)
        logger.info(f"Cycle baseline: regime={eq.regime.value}, q_t={eq.q_t:.6g}, w_low={eq.w_low:.6g}")
        return result

    def execute_experiment(self, axis: SweepAxis, threads: int = 1) -> pd.DataFrame:
        return run_sweep(evaluate_point, self.params, axis, threads)

    def validate(self) -> bool:
        eq = solve_cycle_equilibrium(self.params)
        if eq.regime != CycleRegime.FRAGMENTED or eq.boundary_flag or self.params.Gamma == 0:
            return True
        residual = f2(eq.q_t, self.params)
        if not math.isfinite(residual) or abs(residual) > RESIDUAL_TOL * max(1.0, eq.q_t):
            logger.warning(f"Marginal LP residual f2(q_t)={residual} exceeds tolerance")
            return False
        if eq.L_low > 0 and not eq.d_low < eq.d_high:
            logger.warning(f"Cycle durations out of order: d_low={eq.d_low}, d_high={eq.d_high}")
            return False
        return True
