import math

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field
from scipy.special import lambertw

from feetiers.constants import LAMBERT_MATCH_RTOL
from feetiers.exceptions import BracketError, ParameterError
from feetiers.logics.common.numerics import bisect, central_difference, minimize_bounded
from feetiers.logics.common.sweep import update_params
from feetiers.logics.cycle_model.equilibrium import solve_cycle_equilibrium
from feetiers.schema import CycleModelParams


class LambertCandidate(BaseModel):
    reading: str = Field(..., description="Reading of the closed form.")
    value: float | None = Field(default=None, description="Real value, absent when the branch is complex.")
    matches: bool = Field(default=False, description="Whether it agrees with the numeric optimum.")


class OptimalFeeReport(BaseModel):
    f_star: float = Field(..., description="Fee minimising the single-pool implementation shortfall.")
    shortfall: float = Field(..., description="Implementation shortfall at f_star.")
    derivative: float = Field(..., description="Central-difference dIS/df at f_star.")
    lambert_candidates: list[LambertCandidate] = Field(default_factory=list, description="Closed-form readings.")
    matching_reading: str | None = Field(default=None, description="Reading that agrees with f_star, if any.")


def implementation_shortfall(menu: list[tuple[float, float]], params: CycleModelParams) -> float:
    """Fees paid on filled liquidity plus forgone gains on the unfilled rest of a large order.

    Args:
        menu (list[tuple[float, float]]): (fee, pool size) per pool.
        params (CycleModelParams): supplies Theta_big and Delta_gft.

    Returns:
        float: sum_k f_k L_k + g (Theta - sum_k L_k).
    """
    if not menu:
        raise ParameterError("menu", "at least one pool")
    filled = math.fsum(size for _, size in menu)
    paid = math.fsum(fee * size for fee, size in menu)
    return paid + params.Delta_gft * (params.Theta_big - filled)


def single_pool_supply(f: float, params: CycleModelParams) -> float:
    """Liquidity posted on a lone pool charging ``f``; zero when nobody breaks even."""
    if f < 0:
        raise ParameterError("f", "f >= 0", f)
    if params.Gamma == 0:
        entrant = 1.0
    elif f == 0 or params.Gamma / f > params.Q:
        return 0.0
    else:
        entrant = max(params.Gamma / f, 1.0)
    return params.Q / (params.Q - 1.0) * (math.log(params.Q) - math.log(entrant))


def single_pool_is(f: float, params: CycleModelParams) -> float:
    return implementation_shortfall([(f, single_pool_supply(f, params))], params)


def menu_shortfall(h: float, ell: float, params: CycleModelParams) -> float:
    """Shortfall of the two-pool menu {h, ell}, with pool sizes from the cycle equilibrium."""
    if ell > h:
        raise ParameterError("ell", "ell <= h", ell)
    if ell == h:
        return single_pool_is(h, params)
    if params.Gamma / h > params.Q:
        logger.warning(f"No LP breaks even at h={h}; shortfall is the full forgone gain")
        return params.Delta_gft * params.Theta_big
    eq = solve_cycle_equilibrium(update_params(params, {"h": h, "ell": ell}))
    return implementation_shortfall([(ell, eq.L_low), (h, eq.L_high)], params)


def single_pool_is_derivative(f: float, params: CycleModelParams) -> float:
    """Analytic dIS/df on the participation interval [Gamma/Q, Gamma]."""
    c = params.Q / (params.Q - 1.0)
    return single_pool_supply(f, params) + (f - params.Delta_gft) * c / f


def lambert_candidates(f_star: float, params: CycleModelParams) -> list[LambertCandidate]:
    """Evaluate the readings g/W0(z), g/W_-1(z) and g*W0(z) with z = e g Q / Gamma."""
    g = params.Delta_gft
    if params.Gamma == 0:
        return []
    z = math.e * g * params.Q / params.Gamma
    w0 = complex(lambertw(z, 0))
    wm1 = complex(lambertw(z, -1))
    readings: list[tuple[str, complex]] = [
        ("g / W0(e g Q / Gamma)", g / w0),
        ("g / W_-1(e g Q / Gamma)", g / wm1),
        ("g * W0(e g Q / Gamma)", g * w0),
    ]
    candidates = []
    for name, value in readings:
        if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
            candidates.append(LambertCandidate(reading=name))
            continue
        real = float(value.real)
        matches = bool(np.isclose(real, f_star, rtol=LAMBERT_MATCH_RTOL, atol=0.0))
        candidates.append(LambertCandidate(reading=name, value=real, matches=matches))
    return candidates


def optimal_single_fee(params: CycleModelParams) -> OptimalFeeReport:
    """Minimise the single-pool shortfall over the fees at which some LP participates."""
    if params.Gamma == 0:
        f_star = 0.0
    else:
        lower, upper = params.Gamma / params.Q, params.Gamma
        f_star = minimize_bounded(lambda f: single_pool_is(f, params), lower, upper)
        try:
            f_star = bisect(lambda f: single_pool_is_derivative(f, params), lower, upper)
        except BracketError:
            logger.debug("Shortfall derivative keeps its sign on the participation interval; using the minimiser")

    derivative = central_difference(lambda f: single_pool_is(f, params), f_star) if f_star > 0 else math.nan
    candidates = lambert_candidates(f_star, params)
    matching = next((c.reading for c in candidates if c.matches), None)
    if candidates and matching is None:
        logger.warning(f"No closed-form reading matches f*={f_star:.12g}")
    logger.info(f"Optimal single-pool fee f*={f_star:.6g}")
    return OptimalFeeReport(
        f_star=f_star,
        shortfall=single_pool_is(f_star, params),
        derivative=derivative,
        lambert_candidates=candidates,
        matching_reading=matching,
    )
