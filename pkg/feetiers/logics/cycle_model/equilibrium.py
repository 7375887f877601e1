import math

from loguru import logger

from feetiers.constants import CYCLE_BRACKET_EPS, FINITE_DIFFERENCE_STEP
from feetiers.exceptions import BracketError, ParameterError
from feetiers.logics.common.numerics import bisect
from feetiers.logics.common.sweep import update_params
from feetiers.schema import CycleEquilibrium, CycleModelParams, CycleRegime, PoolSide

BOUNDARY_RTOL = 1e-12
COMPARATIVE_STATICS_PARAMS = ("Gamma", "h", "lambda_rate", "ell", "theta_rate")


def participation_floor(params: CycleModelParams) -> float:
    """Smallest participating endowment, max(Gamma/h, 1) clamped to Q."""
    return min(max(params.Gamma / params.h, 1.0), params.Q)


def pool_sizes(q_t: float, q_lo: float, Q: float) -> tuple[float, float]:
    if not 1.0 <= q_lo <= q_t <= Q:
        raise ParameterError("q_t", "1 <= q_lo <= q_t <= Q", (q_lo, q_t, Q))
    scale = Q / (Q - 1.0)
    return scale * (math.log(Q) - math.log(q_t)), scale * (math.log(q_t) - math.log(q_lo))


def cycle_durations(L_low: float, params: CycleModelParams) -> tuple[float, float]:
    if L_low < 0:
        raise ParameterError("L_low", "L_low >= 0", L_low)
    d_high = 1.0 / params.lambda_rate
    d_low = -math.expm1(-L_low * params.lambda_rate / params.theta_rate) / params.lambda_rate
    return d_low, d_high


def _scaled(q_t: float, params: CycleModelParams) -> float:
    return (q_t / params.Q) ** params.exponent


def f1(q_t: float, params: CycleModelParams) -> float:
    return params.h * _scaled(q_t, params) - (params.h - params.ell)


def f2(q_t: float, params: CycleModelParams) -> float:
    """Fixed-point residual of the marginal LP; +inf (or -inf when Gamma = 0) where f1 <= 0."""
    denominator = f1(q_t, params)
    if denominator <= 0.0:
        return math.inf if params.Gamma > 0 else -math.inf
    return params.Gamma * _scaled(q_t, params) / denominator - q_t


def f2_derivative(q_t: float, params: CycleModelParams) -> float:
    x = _scaled(q_t, params)
    denominator = params.h * x - (params.h - params.ell)
    if denominator <= 0.0:
        return math.nan
    dx = params.exponent * x / q_t
    return -params.Gamma * (params.h - params.ell) * dx / denominator**2 - 1.0


def f1_root(params: CycleModelParams) -> float:
    """q_r = Q ((h - ell)/h)^(1/E), where f1 changes sign."""
    return params.Q * ((params.h - params.ell) / params.h) ** (1.0 / params.exponent)


def lp_cycle_profit(q: float, side: PoolSide, L_low: float, params: CycleModelParams) -> float:
    """Profit per unit of time (q f - Gamma)/d of an LP of endowment ``q`` on ``side``."""
    d_low, d_high = cycle_durations(L_low, params)
    fee, duration = (params.ell, d_low) if side == PoolSide.LOW else (params.h, d_high)
    margin = q * fee - params.Gamma
    if duration == 0.0:
        return math.copysign(math.inf, margin) if margin != 0 else 0.0
    return margin / duration


def profit_difference(q: float, q_t: float, params: CycleModelParams) -> float:
    """pi_low(q) - pi_high(q) when pool sizes follow from the marginal LP ``q_t``."""
    L_low, _ = pool_sizes(q_t, max(min(participation_floor(params), q_t), 1.0), params.Q)
    return lp_cycle_profit(q, PoolSide.LOW, L_low, params) - lp_cycle_profit(q, PoolSide.HIGH, L_low, params)


def _near(a: float, b: float) -> bool:
    return abs(a - b) <= BOUNDARY_RTOL * max(1.0, abs(a), abs(b))


def _all_low_margins(params: CycleModelParams) -> tuple[float, float]:
    gap = (params.h - params.ell) / params.h * params.Q**params.exponent
    return 1.0 - gap, (1.0 - gap) - params.Gamma / params.h


def _build(
    regime: CycleRegime,
    q_t: float,
    params: CycleModelParams,
    q_r: float | None = None,
    boundary_flag: bool = False,
    candidates: list[CycleRegime] | None = None,
) -> CycleEquilibrium:
    q_lo = participation_floor(params)
    if regime == CycleRegime.ALL_LOW:
        q_lo = q_t
    q_t = max(q_t, q_lo)
    L_low, L_high = pool_sizes(q_t, q_lo, params.Q)
    d_low, d_high = cycle_durations(L_low, params)
    total = L_low + L_high
    return CycleEquilibrium(
        regime=regime,
        q_t=q_t,
        q_lo=q_lo,
        q_r=q_r,
        L_low=L_low,
        L_high=L_high,
        w_low=L_low / total if total > 0 else 0.0,
        d_low=d_low,
        d_high=d_high,
        boundary_flag=boundary_flag,
        candidate_regimes=candidates or [regime],
    )


def solve_cycle_equilibrium(params: CycleModelParams) -> CycleEquilibrium:
    Q = params.Q
    q_r_raw = f1_root(params)
    q_r = q_r_raw if 1.0 <= q_r_raw < Q else None

    high_margin = params.Gamma - Q * params.ell
    if high_margin > 0 and not _near(params.Gamma, Q * params.ell):
        logger.info("Cycle equilibrium: AllHigh (Gamma > Q * ell)")
        return _build(CycleRegime.ALL_HIGH, Q, params, q_r=q_r)

    viable_margin, entry_margin = _all_low_margins(params)
    if viable_margin > 0 and entry_margin > 0 and not _near(entry_margin, 0.0):
        logger.info("Cycle equilibrium: AllLow")
        return _build(CycleRegime.ALL_LOW, 1.0, params, q_r=q_r)

    candidates = [CycleRegime.FRAGMENTED]
    if _near(params.Gamma, Q * params.ell):
        candidates.append(CycleRegime.ALL_HIGH)
    if viable_margin > 0 and _near(entry_margin, 0.0):
        candidates.append(CycleRegime.ALL_LOW)
    boundary_flag = len(candidates) > 1

    lower = max(q_r_raw, 1.0)
    lower = lower * (1.0 + CYCLE_BRACKET_EPS) if q_r_raw >= 1.0 else lower
    lower = min(lower, Q)
    f_lower, f_upper = f2(lower, params), f2(Q, params)
    if f_lower * f_upper > 0:
        if f_lower <= 0:
            # Gamma = 0 with q_r inside [1, Q): the residual never turns positive.
            fallback = q_r if q_r is not None else lower
            logger.warning(f"No sign change of f2 on [{lower}, {Q}]; marginal LP set to {fallback}")
            return _build(CycleRegime.FRAGMENTED, fallback, params, q_r=q_r, boundary_flag=True, candidates=candidates)
        if CycleRegime.ALL_HIGH in candidates:
            logger.warning("Gamma = Q * ell up to rounding; marginal LP set to Q")
            return _build(CycleRegime.FRAGMENTED, Q, params, q_r=q_r, boundary_flag=True, candidates=candidates)
        raise BracketError(lower, Q, f_lower, f_upper)

    q_t = bisect(lambda q: f2(q, params), lower, Q)
    if boundary_flag:
        logger.warning(f"Parameters lie on a regime boundary; candidates {[c.value for c in candidates]}")
    equilibrium = _build(CycleRegime.FRAGMENTED, q_t, params, q_r=q_r, boundary_flag=boundary_flag, candidates=candidates)
    logger.info(f"Cycle equilibrium: Fragmented, q_t={q_t:.6g}, w_low={equilibrium.w_low:.6g}")
    return equilibrium


def market_share_low_cycle(eq: CycleEquilibrium) -> float:
    """Share of liquidity on pool L at the start of a cycle."""
    total = eq.L_low + eq.L_high
    return eq.L_low / total if total > 0 else 0.0


def comparative_statics(
    params: CycleModelParams, names: tuple[str, ...] = COMPARATIVE_STATICS_PARAMS
) -> dict[str, dict[str, float]]:
    """Central finite differences of q_t and w_low at the solved equilibrium, one entry per parameter."""
    result: dict[str, dict[str, float]] = {}
    for name in names:
        value = getattr(params, name)
        step = FINITE_DIFFERENCE_STEP * max(1.0, abs(value))
        up = solve_cycle_equilibrium(update_params(params, {name: value + step}))
        down = solve_cycle_equilibrium(update_params(params, {name: value - step}))
        result[name] = {
            "q_t": (up.q_t - down.q_t) / (2.0 * step),
            "w_low": (up.w_low - down.w_low) / (2.0 * step),
        }
    return result
