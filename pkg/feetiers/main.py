import json
import sys
from pathlib import Path
from typing import Any

import click
import pandas as pd
import yaml
from loguru import logger
from pydantic import BaseModel, ValidationError

from feetiers.analytics import (
    build_panel,
    gas_benchmarks,
    hourly_tvl,
    impermanent_loss_series,
    instant_benchmark,
    jit_detect,
    lagged_benchmark,
    liquidity_cycles,
    load_events,
    lvr_swaps,
    swaps_only,
)
from feetiers.configs import settings
from feetiers.constants import (
    BASE_CONFIG_PATH,
    DEFAULT_N_LOWEST_GAS,
    DEFAULT_OUTPUT_DIRC,
    DEFAULT_ROUTE_SIZES,
    EFFECTIVE_CONFIG_NAME,
    MODEL_TYPE_PLACEHOLDER,
    ROUTE_POOL_HIGH_PATH,
    ROUTE_POOL_LOW_PATH,
    SIMULATE_CONFIG_PATH,
)
from feetiers.exceptions import InfeasibleModelError
from feetiers.logics import EquilibriumModelContext, ModelType
from feetiers.logics.common import load_config, round_floats, save_csv, save_json
from feetiers.logics.cycle_model import solve_cycle_equilibrium
from feetiers.logics.range_model import solve_equilibrium
from feetiers.pool import PoolState, run_pool_demo
from feetiers.router import route_sizes
from feetiers.schema import CycleModelParams, RangeModelParams, RunConfig, SimConfig, SimModel, SweepAxis
from feetiers.sim import prediction_checks, run_simulation

MODEL_CHOICES = ["range", "cycle"]
ANALYSIS_CHOICES = ["lvr", "il", "jit", "cycles", "panel"]

logger.configure(
    handlers=[
        {
            "sink": sys.stderr,
            "format": "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
            "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
            "level": settings.LOG_LEVEL,
            "colorize": True,
            "backtrace": True,
            "diagnose": False,
        }
    ]
)


def _model_params(model_type: ModelType, data: dict[str, Any]) -> RangeModelParams | CycleModelParams:
    if model_type == ModelType.RANGE:
        return RangeModelParams.model_validate(data)
    return CycleModelParams.model_validate(data)


def parse_overrides(pairs: tuple[str, ...]) -> dict[str, Any]:
    """Turn ``KEY=VALUE`` flags into a dict; values are parsed as YAML scalars."""
    updates: dict[str, Any] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise click.BadParameter(f"expected KEY=VALUE (got {pair!r})", param_hint="--set")
        updates[key.strip()] = yaml.safe_load(value)
    return updates


def load_model_params(
    model_type: ModelType, config_path: str | None, overrides: dict[str, Any]
) -> tuple[RangeModelParams | CycleModelParams, str]:
    path = config_path or BASE_CONFIG_PATH.replace(MODEL_TYPE_PLACEHOLDER, model_type.name.lower())
    data = load_config(path)
    params = _model_params(model_type, data)
    if overrides:
        unknown = [key for key in overrides if key not in type(params).model_fields]
        if unknown:
            raise ValueError(f"Invalid parameter name: {unknown[0]}")
        params = _model_params(model_type, {**data, **overrides})
    return params, path


def _output_dir(ctx: click.Context) -> Path:
    path = Path(ctx.obj["output"] or settings.OUTPUT_DIR or DEFAULT_OUTPUT_DIRC)
    path.mkdir(parents=True, exist_ok=True)
    return path


def save_table(ctx: click.Context, df: pd.DataFrame, stem: str) -> Path:
    """Write ``df`` as ``<output>/<stem>.csv`` or ``.json`` according to ``--format``."""
    fmt = ctx.obj["output_format"]
    path = _output_dir(ctx) / f"{stem}.{fmt}"
    if fmt == "json":
        save_json(path, df.to_dict("records"))
    else:
        flat = df.copy()
        for col in flat.columns:
            if flat[col].map(lambda x: isinstance(x, list)).any():
                flat[col] = flat[col].map(lambda x: ";".join(x) if isinstance(x, list) else x)
        save_csv(path, flat)
    logger.info(f"Saved {len(df)} row(s) to {path}")
    return path


def save_document(ctx: click.Context, data: Any, stem: str) -> Path:
    path = _output_dir(ctx) / f"{stem}.json"
    save_json(path, data)
    logger.info(f"Saved {path}")
    return path


def write_effective_config(ctx: click.Context, run_config: RunConfig) -> None:
    save_json(_output_dir(ctx) / EFFECTIVE_CONFIG_NAME, run_config.model_dump(mode="json"))


def _run_config(ctx: click.Context, **kwargs: Any) -> RunConfig:
    return RunConfig(
        threads=ctx.obj["threads"],
        output=str(_output_dir(ctx)),
        output_format=ctx.obj["output_format"],
        **kwargs,
    )


def _echo(data: Any) -> None:
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    click.echo(json.dumps(round_floats(data), indent=2, sort_keys=True))


@click.group()
@click.option("--threads", type=int, default=None, help="Worker count for sweeps, replications and routing.")
@click.option(
    "--format", "output_format", type=click.Choice(["csv", "json"]), default="csv", help="Format of tabular outputs."
)
@click.option("--output", type=str, default=None, help="Output directory; defaults to FEETIERS_OUTPUT_DIR.")
@click.pass_context
def cli(ctx: click.Context, threads: int | None, output_format: str, output: str | None) -> None:
    """Fee-tier equilibrium models, simulations, on-chain analytics and routing."""
    ctx.ensure_object(dict)
    resolved = threads if threads is not None else settings.THREADS
    if resolved < 1:
        raise click.BadParameter("must satisfy threads >= 1", param_hint="--threads")
    ctx.obj.update(threads=resolved, output_format=output_format, output=output)
    if settings.LOG_DIR is not None:
        logger.add(
            f"{settings.LOG_DIR}/logfile_{ctx.invoked_subcommand}.log",
            rotation="1 MB",
            compression="zip",
            level=settings.LOG_LEVEL,
        )


@cli.command()
@click.argument("model_type", type=click.Choice(MODEL_CHOICES))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--set", "overrides", multiple=True, help="Override a parameter, e.g. --set Gamma=2.")
@click.pass_context
def equilibrium(ctx: click.Context, model_type: str, config_path: str | None, overrides: tuple[str, ...]) -> None:
    """Solve the equilibrium of one model and report welfare quantities."""
    kind = ModelType.from_name(model_type)
    params, path = load_model_params(kind, config_path, parse_overrides(overrides))
    write_effective_config(
        ctx, _run_config(ctx, command="equilibrium", target=model_type, config_path=path, params=params.model_dump())
    )
    context = EquilibriumModelContext(kind, params=params)
    result = context.execute_baseline()
    save_document(ctx, result, f"equilibrium_{model_type}")
    _echo(result)


@cli.command()
@click.argument("model_type", type=click.Choice(MODEL_CHOICES))
@click.option("--param", required=True, help="Parameter varied along the grid.")
@click.option("--min", "min_value", type=float, required=True)
@click.option("--max", "max_value", type=float, required=True)
@click.option("--points", type=int, required=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--set", "overrides", multiple=True, help="Override a parameter, e.g. --set h=1.5.")
@click.pass_context
def sweep(
    ctx: click.Context,
    model_type: str,
    param: str,
    min_value: float,
    max_value: float,
    points: int,
    config_path: str | None,
    overrides: tuple[str, ...],
) -> None:
    """Solve the model over a one-parameter grid."""
    kind = ModelType.from_name(model_type)
    params, path = load_model_params(kind, config_path, parse_overrides(overrides))
    axis = SweepAxis(param=param, min=min_value, max=max_value, points=points)
    write_effective_config(
        ctx,
        _run_config(
            ctx, command="sweep", target=model_type, config_path=path, params=params.model_dump(), sweep=axis
        ),
    )
    context = EquilibriumModelContext(kind, params=params)
    table = context.execute_experiment(axis, ctx.obj["threads"])
    if table is None:
        raise InfeasibleModelError("params", f"base {model_type} parameters pass validation")
    save_table(ctx, table, f"sweep_{model_type}_{param}")


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--model", "model_type", type=click.Choice(MODEL_CHOICES), default="cycle", help="Used without --config.")
@click.option("--seed", type=int, default=None, help="Master seed; overrides the config.")
@click.option("--horizon", type=int, default=None, help="Events per replication; overrides the config.")
@click.option("--replications", type=int, default=None, help="Replications; overrides the config.")
@click.option("--cycles/--no-cycles", "record_cycles", default=False, help="Also write the per-cycle table.")
@click.pass_context
def simulate(
    ctx: click.Context,
    config_path: str | None,
    model_type: str,
    seed: int | None,
    horizon: int | None,
    replications: int | None,
    record_cycles: bool,
) -> None:
    """Simulate the event process of a model and test its empirical predictions."""
    path = config_path or SIMULATE_CONFIG_PATH.replace(MODEL_TYPE_PLACEHOLDER, model_type)
    data = load_config(path)
    updates = {k: v for k, v in {"seed": seed, "horizon": horizon, "replications": replications}.items() if v is not None}
    config = SimConfig.model_validate({**data, **updates})
    write_effective_config(
        ctx,
        _run_config(
            ctx,
            command="simulate",
            target=config.model.value,
            config_path=path,
            params=config.model_dump(mode="json"),
            seed=config.seed,
        ),
    )
    report, table = run_simulation(config, ctx.obj["threads"], record_cycles=record_cycles)
    if config.model == SimModel.CYCLE:
        assert isinstance(config.params, CycleModelParams)
        eq: Any = solve_cycle_equilibrium(config.params)
    else:
        assert isinstance(config.params, RangeModelParams)
        eq = solve_equilibrium(config.params)
    ledger = prediction_checks(report, eq)
    result = {"report": report.model_dump(mode="json"), "predictions": ledger.model_dump(mode="json")}
    save_document(ctx, result, f"simulate_{config.model.value}")
    if table is not None:
        save_table(ctx, table, f"cycles_{config.model.value}")
    _echo(result["predictions"])


def _lvr_table(events: pd.DataFrame) -> pd.DataFrame:
    swaps = swaps_only(events)
    amount0, amount1 = swaps["amount0"].to_numpy(), swaps["amount1"].to_numpy()
    instant = instant_benchmark(swaps)
    lagged = lagged_benchmark(swaps, hourly_tvl(events))
    table = swaps[["event_id", "pool_id", "day", "price"]].copy()
    table["benchmark_instant"] = instant.to_numpy()
    table["lvr_instant"] = lvr_swaps(amount0, amount1, instant.to_numpy())
    table["benchmark_1h"] = lagged.to_numpy()
    table["lvr_1h"] = lvr_swaps(amount0, amount1, lagged.to_numpy())
    return table.reset_index(drop=True)


def _il_table(events: pd.DataFrame) -> pd.DataFrame:
    swaps = swaps_only(events)
    table = swaps[["event_id", "pool_id", "day", "price"]].copy()
    table["il_bps"] = impermanent_loss_series(swaps).to_numpy()
    return table.reset_index(drop=True)


@cli.command()
@click.argument("kind", type=click.Choice(ANALYSIS_CHOICES))
@click.option("--events", "events_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--n-lowest", type=int, default=DEFAULT_N_LOWEST_GAS, help="Gas bids averaged per day (panel).")
@click.pass_context
def analyze(ctx: click.Context, kind: str, events_path: str, n_lowest: int) -> None:
    """Measure an event log: per-swap LVR or IL, JIT triples, liquidity cycles or the pool-day panel."""
    write_effective_config(ctx, _run_config(ctx, command="analyze", target=kind, inputs=[events_path]))
    events = load_events(events_path)
    if kind == "lvr":
        save_table(ctx, _lvr_table(events), "lvr")
    elif kind == "il":
        save_table(ctx, _il_table(events), "il")
    elif kind == "jit":
        save_table(ctx, jit_detect(events), "jit")
    elif kind == "cycles":
        cycles = liquidity_cycles(events)
        save_table(ctx, cycles.durations_frame, "cycles")
        save_table(ctx, cycles.range_flags_frame, "range_flags")
    elif kind == "panel":
        save_table(ctx, build_panel(events), "panel")
        save_table(ctx, gas_benchmarks(events, n_lowest), "gas_benchmarks")
    else:
        raise ValueError(f"Invalid analysis kind: {kind}")


def parse_sizes(sizes: str) -> list[float]:
    try:
        values = [float(s) for s in sizes.split(",") if s.strip()]
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated numbers (got {sizes!r})", param_hint="--sizes") from e
    if not values or any(v < 0 for v in values):
        raise click.BadParameter(f"must satisfy size >= 0 for every size (got {sizes!r})", param_hint="--sizes")
    return values


@cli.command("route")
@click.option(
    "--pools",
    type=click.Path(exists=True, dir_okay=False),
    nargs=2,
    default=(ROUTE_POOL_LOW_PATH, ROUTE_POOL_HIGH_PATH),
    help="Snapshots of the low-fee and the high-fee pool.",
)
@click.option("--sizes", default=DEFAULT_ROUTE_SIZES, help="Comma-separated token quantities to buy.")
@click.option("--gas", type=float, default=0.0, help="Fixed numeraire cost per pool touched.")
@click.pass_context
def route_command(ctx: click.Context, pools: tuple[str, str], sizes: str, gas: float) -> None:
    """Split purchases between two pools at least cost."""
    values = parse_sizes(sizes)
    write_effective_config(
        ctx, _run_config(ctx, command="route", inputs=list(pools), params={"sizes": values, "gas_per_pool": gas})
    )
    pool_low, pool_high = (PoolState.from_snapshot(load_config(p)) for p in pools)
    if pool_low.fee_fraction > pool_high.fee_fraction:
        logger.warning("First pool charges the higher fee; columns still refer to the pools in the order given")
    save_table(ctx, route_sizes(values, pool_low, pool_high, ctx.obj["threads"], gas), "route")


@cli.group()
def pool() -> None:
    """Concentrated-liquidity pool engine."""


@pool.command()
@click.pass_context
def demo(ctx: click.Context) -> None:
    """Two providers, one buyer crossing two ticks: deposits, fills and fee splits."""
    write_effective_config(ctx, _run_config(ctx, command="pool", target="demo"))
    report = run_pool_demo()
    save_document(ctx, report.model_dump(), "pool_demo")
    _echo(report)


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and map failures to exit codes: 1 for invalid input, 2 for infeasible model assumptions."""
    try:
        code = cli.main(args=argv, prog_name="feetiers", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except InfeasibleModelError as e:
        logger.error(str(e))
        return 2
    except ValidationError as e:
        logger.error(str(e))
        return 1
    except ValueError as e:
        logger.error(str(e))
        return 1
    return code if isinstance(code, int) else 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
