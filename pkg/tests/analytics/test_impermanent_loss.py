import pandas as pd
import pytest

from feetiers.analytics.events import events_frame, swaps_only
from feetiers.analytics.impermanent_loss import (
    impermanent_loss,
    impermanent_loss_series,
    symmetric_impermanent_loss,
)
from feetiers.exceptions import ParameterError
from feetiers.schema import EventKind
from tests.conftest import make_event


def test_no_move_no_loss() -> None:
    assert symmetric_impermanent_loss(100.0, 100.0) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("p1", [90.0, 98.0, 102.0, 110.0])
def test_any_move_loses(p1: float) -> None:
    assert symmetric_impermanent_loss(100.0, p1) > 0.0


def test_loss_grows_with_move() -> None:
    assert symmetric_impermanent_loss(100.0, 103.0) > symmetric_impermanent_loss(100.0, 101.0)


def test_invalid_inputs() -> None:
    with pytest.raises(ParameterError):
        symmetric_impermanent_loss(100.0, 101.0, alpha=1.0)
    with pytest.raises(ParameterError):
        impermanent_loss(1.0, 90.0, 110.0, 100.0, 0.0)


def test_series_needs_a_later_price() -> None:
    events = [
        make_event(1, 0, EventKind.SWAP, -1.0, 100.0, timestamp=0),
        make_event(2, 0, EventKind.SWAP, -1.0, 102.0, timestamp=3_600),
    ]
    swaps = swaps_only(events_frame(events))
    series = impermanent_loss_series(swaps)
    assert series.iloc[0] == pytest.approx(symmetric_impermanent_loss(100.0, 102.0) * 10_000.0)
    assert pd.isna(series.iloc[1])
