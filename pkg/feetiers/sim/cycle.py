import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from feetiers.schema import CycleEquilibrium, CycleModelParams

CYCLE_COLUMNS = ["pool", "duration", "volume", "trades"]


@dataclass
class CycleTrace:
    """Per large-trader gap totals of one replication; index j covers the j-th inter-arrival gap."""

    gaps: np.ndarray
    low_cycles: np.ndarray
    low_volume: np.ndarray
    low_trades: np.ndarray
    high_cycles: np.ndarray
    high_volume: np.ndarray
    high_trades: np.ndarray
    sold: float
    bought: float
    cycles: pd.DataFrame | None = field(default=None)


@dataclass
class _LowFlow:
    full: np.ndarray
    partial: np.ndarray
    small: np.ndarray
    large: np.ndarray
    small_trades: np.ndarray
    partial_trades: np.ndarray
    full_trades: float
    full_durations: np.ndarray


def _drain_time(L_low: float, theta: float, dt: float | None) -> float:
    drain = L_low / theta
    if dt is not None:
        drain = math.ceil(drain / dt - 1e-12) * dt
    return drain


def _continuous_low(gaps: np.ndarray, L_low: float, theta: float, dt: float | None) -> _LowFlow:
    drain = _drain_time(L_low, theta, dt)
    full = np.floor(gaps / drain)
    partial = gaps - full * drain
    if dt is None:
        partial_small = theta * partial
    else:
        partial_small = theta * dt * np.floor(partial / dt + 1e-12)
    partial_small = np.minimum(partial_small, L_low)
    return _LowFlow(
        full=full,
        partial=partial,
        small=full * L_low + partial_small,
        large=L_low - partial_small,
        small_trades=full * L_low + partial_small,
        partial_trades=partial_small + 1.0,
        full_trades=L_low,
        full_durations=np.full(int(full.sum()), drain),
    )


def _discrete_low(rng: np.random.Generator, gaps: np.ndarray, L_low: float, theta: float) -> _LowFlow:
    """Unit-size small trades arriving as a Poisson stream; the last trade of a cycle takes the remainder."""
    per_cycle = max(math.ceil(L_low - 1e-12), 1)
    arrivals = rng.poisson(theta * gaps)
    full = arrivals // per_cycle
    leftover = arrivals - full * per_cycle
    partial_small = np.minimum(leftover, L_low)
    durations: list[np.ndarray] = []
    partial = np.empty_like(gaps)
    for j, (gap, n, k) in enumerate(zip(gaps, arrivals, full)):
        times = np.sort(rng.uniform(0.0, gap, size=n))
        ends = np.concatenate(([0.0], times[per_cycle - 1 :: per_cycle][:k]))
        durations.append(np.diff(ends))
        partial[j] = gap - ends[-1]
    return _LowFlow(
        full=full.astype(float),
        partial=partial,
        small=full * L_low + partial_small,
        large=L_low - partial_small,
        small_trades=arrivals.astype(float),
        partial_trades=leftover + 1.0,
        full_trades=float(per_cycle),
        full_durations=np.concatenate(durations) if durations else np.empty(0),
    )


def simulate_cycle(
    params: CycleModelParams,
    eq: CycleEquilibrium,
    horizon: int,
    rng: np.random.Generator,
    dt: float | None = None,
    discrete_small_trades: bool = False,
    record_cycles: bool = False,
) -> CycleTrace:
    """Run ``horizon`` large-trader arrivals of the liquidity-cycle process.

    Pool H refills once per arrival. Pool L refills whenever the small flow drains it and again after each
    large trader, who empties L first and then H. Refill is instantaneous and restores the equilibrium sizes.
    """
    gaps = rng.exponential(1.0 / params.lambda_rate, size=horizon)
    L_low, L_high, theta = eq.L_low, eq.L_high, params.theta_rate
    zeros = np.zeros(horizon)

    flow: _LowFlow | None = None
    if L_low > 0:
        flow = _discrete_low(rng, gaps, L_low, theta) if discrete_small_trades else _continuous_low(gaps, L_low, theta, dt)
        low_cycles = flow.full + 1.0
        low_volume = low_cycles * L_low
        low_trades = flow.small_trades + (flow.large > 0)
        moved = math.fsum(flow.small) + math.fsum(flow.large)
    else:
        low_cycles = low_volume = low_trades = zeros
        moved = 0.0

    high_on = 1.0 if L_high > 0 else 0.0
    trace = CycleTrace(
        gaps=gaps,
        low_cycles=low_cycles,
        low_volume=low_volume,
        low_trades=low_trades,
        high_cycles=np.full(horizon, high_on),
        high_volume=np.full(horizon, L_high),
        high_trades=np.full(horizon, high_on),
        sold=math.fsum(low_volume) + L_high * horizon,
        bought=moved + L_high * horizon,
    )
    if record_cycles:
        trace.cycles = _cycle_table(trace, flow, L_low)
    return trace


def _cycle_table(trace: CycleTrace, flow: _LowFlow | None, L_low: float) -> pd.DataFrame:
    frames = []
    if flow is not None:
        counts = flow.full.astype(int)
        keys = np.concatenate((np.repeat(np.arange(len(counts)), counts), np.arange(len(counts))))
        order = np.argsort(keys, kind="stable")
        durations = np.concatenate((flow.full_durations, flow.partial))[order]
        trades = np.concatenate((np.full(int(counts.sum()), flow.full_trades), flow.partial_trades))[order]
        frames.append(pd.DataFrame({"pool": "low", "duration": durations, "volume": L_low, "trades": trades}))
    if trace.high_cycles.any():
        frames.append(pd.DataFrame({"pool": "high", "duration": trace.gaps, "volume": trace.high_volume, "trades": 1.0}))
    if not frames:
        return pd.DataFrame(columns=CYCLE_COLUMNS)
    return pd.concat(frames, ignore_index=True)[CYCLE_COLUMNS]
