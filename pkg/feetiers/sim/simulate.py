from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
from loguru import logger

from feetiers.logics.cycle_model.equilibrium import solve_cycle_equilibrium
from feetiers.logics.range_model.equilibrium import gains_from_trade, solve_equilibrium
from feetiers.schema import (
    CycleEquilibrium,
    CycleModelParams,
    Estimate,
    RangeEquilibrium,
    RangeModelParams,
    ReplicationSummary,
    SimConfig,
    SimModel,
    SimReport,
)
from feetiers.sim.batching import batch_ratios, estimate
from feetiers.sim.cycle import CycleTrace, simulate_cycle
from feetiers.sim.range import RangeTrace, simulate_range

SIDES = ("low", "high")


def replication_rngs(seed: int, replications: int) -> list[np.random.Generator]:
    """Independent per-replication streams split off the master seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(replications)]


def _pooled(traces: list[CycleTrace], numerator: str, denominator: str, batches: int) -> Estimate:
    ratios: list[float] = []
    for trace in traces:
        ratios.extend(batch_ratios(getattr(trace, numerator), getattr(trace, denominator), batches))
    return estimate(ratios)


def _cycle_report(config: SimConfig, eq: CycleEquilibrium, traces: list[CycleTrace]) -> SimReport:
    b = config.batches
    report = SimReport(
        model=config.model,
        seed=config.seed,
        horizon=config.horizon,
        replications=config.replications,
        regime=eq.regime.value,
        liquidity_share={"low": eq.w_low, "high": 1.0 - eq.w_low if eq.L_low + eq.L_high > 0 else 0.0},
        conservation_error=sum(t.sold - t.bought for t in traces),
    )
    for side in SIDES:
        cycles, volume, trades = f"{side}_cycles", f"{side}_volume", f"{side}_trades"
        report.mean_cycle_duration[side] = _pooled(traces, "gaps", cycles, b)
        report.volume_rate[side] = _pooled(traces, volume, "gaps", b)
        report.mean_trade_size[side] = _pooled(traces, volume, trades, b)
        report.rebalancing_frequency[side] = _pooled(traces, cycles, "gaps", b)
        report.trade_count[side] = float(sum(getattr(t, trades).sum() for t in traces))
        report.rebalancing_events[side] = int(sum(getattr(t, cycles).sum() for t in traces))

    share_batches: list[float] = []
    for trace in traces:
        share_batches.extend(
            batch_ratios(trace.low_volume, trace.low_volume + trace.high_volume, b),
        )
    low_share = estimate(share_batches)
    report.volume_share = {
        "low": low_share,
        "high": Estimate(mean=1.0 - low_share.mean, se=low_share.se, n=low_share.n),
    }
    report.per_replication = [
        ReplicationSummary(
            replication=i,
            elapsed_time=float(t.gaps.sum()),
            cycles={"low": int(t.low_cycles.sum()), "high": int(t.high_cycles.sum())},
            volume={"low": float(t.low_volume.sum()), "high": float(t.high_volume.sum())},
        )
        for i, t in enumerate(traces)
    ]
    return report


def _range_report(
    config: SimConfig, params: RangeModelParams, eq: RangeEquilibrium, traces: list[RangeTrace]
) -> SimReport:
    b = config.batches
    report = SimReport(
        model=config.model,
        seed=config.seed,
        horizon=config.horizon,
        replications=config.replications,
        regime=eq.regime.value,
        liquidity_share={"low": eq.w_low, "high": 1.0 - eq.w_low},
    )
    for side in SIDES:
        profit, net_profit, frequency, sizes, volumes = [], [], [], [], []
        for trace in traces:
            pool = getattr(trace, side)
            events = np.ones_like(pool.tokens)
            profit.extend(batch_ratios(pool.lp_profit, events, b))
            net_profit.extend(batch_ratios(pool.lp_net_profit, events, b))
            frequency.extend(batch_ratios(pool.rebalanced.astype(float), trace.news.astype(float), b))
            sizes.extend(batch_ratios(pool.tokens, (pool.tokens > 0).astype(float), b))
            volumes.extend(batch_ratios(pool.tokens, events, b))
        report.lp_profit_per_unit[side] = estimate(profit)
        report.lp_net_profit_per_unit[side] = estimate(net_profit)
        report.rebalancing_frequency[side] = estimate(frequency)
        report.mean_trade_size[side] = estimate(sizes)
        report.volume_rate[side] = estimate(volumes)
        report.trade_count[side] = float(sum(int((getattr(t, side).tokens > 0).sum()) for t in traces))
        report.rebalancing_events[side] = int(sum(int(getattr(t, side).rebalanced.sum()) for t in traces))

    share_batches: list[float] = []
    gft_batches: list[float] = []
    for trace in traces:
        share_batches.extend(batch_ratios(trace.low.tokens, trace.low.tokens + trace.high.tokens, b))
        gft_batches.extend(batch_ratios(trace.gains, (~trace.news).astype(float), b))
    low_share = estimate(share_batches)
    report.volume_share = {
        "low": low_share,
        "high": Estimate(mean=1.0 - low_share.mean, se=low_share.se, n=low_share.n),
    }
    report.gft_realized = estimate(gft_batches)
    report.per_replication = [
        ReplicationSummary(
            replication=i,
            elapsed_time=float(config.horizon),
            cycles={side: int(getattr(t, side).rebalanced.sum()) for side in SIDES},
            volume={side: float(getattr(t, side).tokens.sum()) for side in SIDES},
        )
        for i, t in enumerate(traces)
    ]
    analytic = gains_from_trade([(params.ell, eq.pool_supply_low), (params.h, eq.pool_supply_high)], params)
    logger.info(f"Realised GFT per private event {report.gft_realized.mean:.6g} (analytic {analytic:.6g})")
    return report


def run_simulation(
    config: SimConfig, threads: int = 1, record_cycles: bool = False
) -> tuple[SimReport, pd.DataFrame | None]:
    """Simulate ``config`` and optionally collect the per-cycle table (cycle mode only)."""
    rngs = replication_rngs(config.seed, config.replications)
    logger.info(f"Simulating {config.model.value} model: horizon={config.horizon}, replications={config.replications}")

    if config.model == SimModel.CYCLE:
        assert isinstance(config.params, CycleModelParams)
        cycle_params = config.params
        cycle_eq = solve_cycle_equilibrium(cycle_params)

        def _cycle(rng: np.random.Generator) -> CycleTrace:
            return simulate_cycle(
                cycle_params,
                cycle_eq,
                config.horizon,
                rng,
                dt=config.dt,
                discrete_small_trades=config.discrete_small_trades,
                record_cycles=record_cycles,
            )

        with ThreadPoolExecutor(max_workers=threads) as executor:
            cycle_traces = list(executor.map(_cycle, rngs))
        report = _cycle_report(config, cycle_eq, cycle_traces)
        table = None
        if record_cycles:
            frames = [t.cycles.assign(replication=i) for i, t in enumerate(cycle_traces) if t.cycles is not None]
            table = pd.concat(frames, ignore_index=True)
            table.insert(0, "cycle_id", np.arange(len(table)))
        return report, table

    assert isinstance(config.params, RangeModelParams)
    range_params = config.params
    range_eq = solve_equilibrium(range_params)

    def _range(rng: np.random.Generator) -> RangeTrace:
        return simulate_range(range_params, range_eq, config.horizon, rng)

    with ThreadPoolExecutor(max_workers=threads) as executor:
        range_traces = list(executor.map(_range, rngs))
    return _range_report(config, range_params, range_eq, range_traces), None


def simulate(config: SimConfig, threads: int = 1) -> SimReport:
    report, _ = run_simulation(config, threads)
    return report
