import math

import pytest

from feetiers.exceptions import BracketError
from feetiers.logics.common.numerics import (
    bisect,
    central_difference,
    compensated_mean,
    expand_bracket,
    integrate_pieces,
    maximize_bounded,
    minimize_bounded,
)


class TestBisect:
    def test_root(self) -> None:
        assert bisect(lambda x: x * x - 2.0, 0.0, 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_root_on_end_point(self) -> None:
        assert bisect(lambda x: x - 1.0, 1.0, 3.0) == 1.0

    def test_no_sign_change(self) -> None:
        with pytest.raises(BracketError):
            bisect(lambda x: x * x + 1.0, -1.0, 1.0)


def test_expand_bracket() -> None:
    left, right = expand_bracket(lambda x: x - 10.0, 0.0, 1.0)
    assert left == 0.0
    assert right >= 10.0


def test_expand_bracket_gives_up() -> None:
    with pytest.raises(BracketError):
        expand_bracket(lambda x: 1.0, 0.0, 1.0, max_expansion=3)


def test_minimize_and_maximize_bounded() -> None:
    assert minimize_bounded(lambda x: (x - 0.3) ** 2, 0.0, 1.0) == pytest.approx(0.3, abs=1e-8)
    assert minimize_bounded(lambda x: x, 0.0, 1.0) == 0.0
    assert maximize_bounded(lambda x: -((x - 0.7) ** 2), 0.0, 1.0) == pytest.approx(0.7, abs=1e-8)


def test_integrate_pieces_skips_empty_pieces() -> None:
    assert integrate_pieces(lambda x: x, [0.0, 1.0, 1.0, 2.0]) == pytest.approx(2.0, rel=1e-12)


def test_central_difference() -> None:
    assert central_difference(math.exp, 1.0) == pytest.approx(math.e, rel=1e-8)


def test_compensated_mean() -> None:
    assert compensated_mean([1e16, 1.0, -1e16]) == pytest.approx(1.0 / 3.0)
    assert math.isnan(compensated_mean([]))
