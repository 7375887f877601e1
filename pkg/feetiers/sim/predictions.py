import math

from loguru import logger

from feetiers.constants import MIN_SAMPLES_FOR_CHECK, SIGNIFICANCE_SE_GATE
from feetiers.schema import (
    CycleEquilibrium,
    Estimate,
    PredictionCheck,
    PredictionLedger,
    PredictionStatus,
    RangeEquilibrium,
    SimModel,
    SimReport,
)
from feetiers.sim.batching import difference_se

TRADE_SIZE = "trade_size_high_exceeds_low"
VOLUME_SHARE = "volume_share_low_exceeds_liquidity_share_low"
VOLUME = "volume_low_exceeds_high"
REBALANCING = "rebalancing_frequency_low_exceeds_high"


def _gate(name: str, diff: float, se: float, enough: bool, gate: float) -> PredictionCheck:
    if not enough or math.isnan(diff) or math.isnan(se):
        return PredictionCheck(
            name=name, status=PredictionStatus.INSUFFICIENT, statistic=diff, se=se, detail="too few samples"
        )
    if diff > gate * se:
        status, detail = PredictionStatus.PASS, f"difference exceeds {gate:g} SE"
    elif diff < -gate * se:
        status, detail = PredictionStatus.FAIL, f"difference below -{gate:g} SE"
    else:
        status, detail = PredictionStatus.INSUFFICIENT, f"difference within {gate:g} SE of zero"
    return PredictionCheck(name=name, status=status, statistic=diff, se=se, detail=detail)


def _compare(name: str, larger: Estimate, smaller: Estimate, enough: bool, gate: float) -> PredictionCheck:
    return _gate(name, larger.mean - smaller.mean, difference_se(larger, smaller), enough, gate)


def _not_applicable(name: str, detail: str) -> PredictionCheck:
    return PredictionCheck(name=name, status=PredictionStatus.NOT_APPLICABLE, detail=detail)


def prediction_checks(
    report: SimReport, eq: CycleEquilibrium | RangeEquilibrium, gate: float = SIGNIFICANCE_SE_GATE
) -> PredictionLedger:
    """Test the empirical predictions on a simulation report with a ``gate``-SE significance rule.

    Checks that need both pools are not applicable when either pool is empty. Trade-size and volume checks
    apply to the cycle process only; the range process is scored on rebalancing frequency.
    """
    both_pools = 0.0 < eq.w_low < 1.0
    enough = all(report.trade_count.get(side, 0.0) >= MIN_SAMPLES_FOR_CHECK for side in ("low", "high"))
    checks: list[PredictionCheck] = []

    if report.model == SimModel.CYCLE:
        if both_pools:
            checks.append(
                _compare(TRADE_SIZE, report.mean_trade_size["high"], report.mean_trade_size["low"], enough, gate)
            )
            share = report.volume_share["low"]
            checks.append(_gate(VOLUME_SHARE, share.mean - eq.w_low, share.se, enough, gate))
            checks.append(_compare(VOLUME, report.volume_rate["low"], report.volume_rate["high"], enough, gate))
        else:
            detail = f"single active pool (w_low={eq.w_low:g})"
            checks.extend(_not_applicable(name, detail) for name in (TRADE_SIZE, VOLUME_SHARE, VOLUME))
    else:
        detail = "predicted by the liquidity-cycle process only"
        checks.extend(_not_applicable(name, detail) for name in (TRADE_SIZE, VOLUME_SHARE, VOLUME))

    if both_pools:
        frequency = report.rebalancing_frequency
        enough_events = enough if report.model == SimModel.CYCLE else report.horizon >= MIN_SAMPLES_FOR_CHECK
        checks.append(_compare(REBALANCING, frequency["low"], frequency["high"], enough_events, gate))
    else:
        checks.append(_not_applicable(REBALANCING, f"single active pool (w_low={eq.w_low:g})"))

    ledger = PredictionLedger(checks=checks)
    for check in ledger.failed:
        logger.warning(f"Prediction failed: {check.name} (statistic={check.statistic}, se={check.se})")
    return ledger
