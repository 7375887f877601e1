import math
from typing import Callable

from loguru import logger
from scipy import integrate, optimize

from feetiers.constants import (
    DEFAULT_BISECTION_MAX_ITER,
    DEFAULT_BISECTION_XTOL,
    DEFAULT_BRACKET_MAX_EXPANSION,
    DEFAULT_MINIMIZE_XATOL,
    DEFAULT_QUAD_EPSREL,
    FINITE_DIFFERENCE_STEP,
)
from feetiers.exceptions import BracketError


def bisect(
    f: Callable[[float], float],
    left: float,
    right: float,
    xtol: float = DEFAULT_BISECTION_XTOL,
    max_iter: int = DEFAULT_BISECTION_MAX_ITER,
) -> float:
    """Bracketed bisection.

    Args:
        f (Callable[[float], float]): function with a sign change on [left, right].
        left (float): lower end of the bracket.
        right (float): upper end of the bracket.
        xtol (float): absolute tolerance on the root.
        max_iter (int): iteration cap.

    Returns:
        float: root located to within ``xtol`` or to machine resolution.
    """
    f_left, f_right = f(left), f(right)
    if f_left == 0:
        return left
    if f_right == 0:
        return right
    if f_left * f_right > 0:
        raise BracketError(left, right, f_left, f_right)

    for _ in range(max_iter):
        mid = 0.5 * (left + right)
        if right - left <= xtol or mid in (left, right):
            return mid
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_left < 0) == (f_mid < 0):
            left, f_left = mid, f_mid
        else:
            right = mid
    logger.warning(f"Bisection hit max_iter={max_iter}; bracket width {right - left}")
    return 0.5 * (left + right)


def expand_bracket(
    f: Callable[[float], float],
    left: float,
    right: float,
    factor: float = 2.0,
    max_expansion: int = DEFAULT_BRACKET_MAX_EXPANSION,
) -> tuple[float, float]:
    """Grow the upper end geometrically until ``f`` changes sign on [left, right]."""
    f_left = f(left)
    width = right - left
    for _ in range(max_expansion):
        f_right = f(right)
        if f_left * f_right <= 0:
            return left, right
        width *= factor
        right = left + width
    raise BracketError(left, right, f_left, f(right))


def minimize_bounded(
    f: Callable[[float], float], lower: float, upper: float, xatol: float = DEFAULT_MINIMIZE_XATOL
) -> float:
    """Bounded scalar minimisation that also compares the two end points."""
    if upper <= lower:
        return lower
    result = optimize.minimize_scalar(f, bounds=(lower, upper), method="bounded", options={"xatol": xatol})
    candidates = [float(result.x), lower, upper]
    return min(candidates, key=f)


def maximize_bounded(
    f: Callable[[float], float], lower: float, upper: float, xatol: float = DEFAULT_MINIMIZE_XATOL
) -> float:
    return minimize_bounded(lambda x: -f(x), lower, upper, xatol)


def integrate_pieces(
    integrand: Callable[[float], float], breakpoints: list[float], epsrel: float = DEFAULT_QUAD_EPSREL
) -> float:
    """Sum of adaptive quadratures over consecutive, non-empty pieces of ``breakpoints``."""
    total = 0.0
    for lower, upper in zip(breakpoints[:-1], breakpoints[1:]):
        if upper > lower:
            value, _ = integrate.quad(integrand, lower, upper, epsabs=0.0, epsrel=epsrel, limit=200)
            total += value
    return total


def central_difference(f: Callable[[float], float], x: float, step: float = FINITE_DIFFERENCE_STEP) -> float:
    h = step * max(1.0, abs(x))
    return (f(x + h) - f(x - h)) / (2.0 * h)


def compensated_mean(values: list[float]) -> float:
    return math.fsum(values) / len(values) if values else float("nan")
